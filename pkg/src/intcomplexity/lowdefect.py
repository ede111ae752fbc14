"""Low-defect polynomials kept as construction trees.

A polynomial is built only from three constructors:

* ``constant(c)``            -- the constant ``c`` with base complexity ``||c||``
* ``tensor(f, g)``           -- ``f(x_1..x_d) * g(x_{d+1}..x_{d+e})``
* ``affine_step(f, c)``      -- ``f(x_1..x_d) * x_{d+1} + c``

Base complexity is tracked alongside the tree (always the minimal admissible
value, so ``||c||`` comes from a :class:`ComplexityTable`).  Coefficients are
derived on demand.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .defect import Defect
from .engine import ComplexityTable
from .errors import ArityError


@dataclass(frozen=True)
class LowDefectPoly:
    kind: str  # "const" | "tensor" | "step"
    base_complexity: int
    degree: int
    c: int = 0
    left: "LowDefectPoly | None" = None
    right: "LowDefectPoly | None" = None

    @property
    def leading_coefficient(self) -> int:
        if self.kind == "const":
            return self.c
        if self.kind == "tensor":
            return self.left.leading_coefficient * self.right.leading_coefficient
        return self.left.leading_coefficient

    @property
    def constant_term(self) -> int:
        if self.kind == "const":
            return self.c
        if self.kind == "tensor":
            return self.left.constant_term * self.right.constant_term
        return self.c

    def coefficients(self) -> dict[tuple[int, ...], int]:
        """Map from sorted variable-index tuples (1-based) to coefficients."""
        if self.kind == "const":
            return {(): self.c}
        if self.kind == "tensor":
            shift = self.left.degree
            out: dict[tuple[int, ...], int] = {}
            for m1, a in self.left.coefficients().items():
                for m2, b in self.right.coefficients().items():
                    mono = m1 + tuple(i + shift for i in m2)
                    out[mono] = out.get(mono, 0) + a * b
            return out
        new_var = self.degree
        out = {m + (new_var,): a for m, a in self.left.coefficients().items()}
        out[()] = out.get((), 0) + self.c
        return out

    def __str__(self):
        return _fmt(self, 0)


def _fmt(f: LowDefectPoly, shift: int) -> str:
    if f.kind == "const":
        return str(f.c)
    if f.kind == "tensor":
        return f"({_fmt(f.left, shift)})*({_fmt(f.right, shift + f.left.degree)})"
    return f"({_fmt(f.left, shift)})*x{shift + f.degree}+{f.c}"


def constant(c: int, table: ComplexityTable) -> LowDefectPoly:
    if c < 1:
        raise ValueError(f"constant must be >= 1, got {c}")
    return LowDefectPoly("const", table[c], 0, c=c)


def tensor(f: LowDefectPoly, g: LowDefectPoly) -> LowDefectPoly:
    return LowDefectPoly(
        "tensor", f.base_complexity + g.base_complexity, f.degree + g.degree, left=f, right=g
    )


def affine_step(f: LowDefectPoly, c: int, table: ComplexityTable) -> LowDefectPoly:
    if c < 1:
        raise ValueError(f"affine step constant must be >= 1, got {c}")
    return LowDefectPoly("step", f.base_complexity + table[c], f.degree + 1, c=c, left=f)


def _check_arity(f: LowDefectPoly, exponents: Sequence[int], expected: int) -> None:
    if len(exponents) != expected:
        raise ArityError(f"expected {expected} exponents, got {len(exponents)}")
    if any(e < 0 for e in exponents):
        raise ValueError("exponents must be non-negative")


def _eval(f: LowDefectPoly, exps: Sequence[int]) -> int:
    if f.kind == "const":
        return f.c
    if f.kind == "tensor":
        d = f.left.degree
        return _eval(f.left, exps[:d]) * _eval(f.right, exps[d:])
    d = f.left.degree
    return _eval(f.left, exps[:d]) * 3 ** exps[d] + f.c


def evaluate(f: LowDefectPoly, exponents: Sequence[int]) -> int:
    """``f(3**e_1, ..., 3**e_d)``."""
    _check_arity(f, exponents, f.degree)
    return _eval(f, tuple(exponents))


def evaluate_augmented(f: LowDefectPoly, exponents: Sequence[int]) -> int:
    """``f(3**e_1, ..., 3**e_d) * 3**e_{d+1}``."""
    _check_arity(f, exponents, f.degree + 1)
    return _eval(f, tuple(exponents[:-1])) * 3 ** exponents[-1]


def delta_poly(f: LowDefectPoly) -> Defect:
    """``||f|| - 3 log3(leading coefficient)``."""
    return Defect(f.base_complexity, f.leading_coefficient)


def delta_f(f: LowDefectPoly, exponents: Sequence[int]) -> Defect:
    """``||f|| + 3*sum(e) - 3 log3 f(3**e)``."""
    value = evaluate(f, exponents)
    return Defect(f.base_complexity + 3 * sum(exponents), value)


def efficiently_represents(
    f: LowDefectPoly, exponents: Sequence[int], table: ComplexityTable, augmented: bool = False
) -> bool:
    """Whether ``||N|| == ||f|| + 3*sum(e)`` at the given point."""
    n = evaluate_augmented(f, exponents) if augmented else evaluate(f, exponents)
    return table[n] == f.base_complexity + 3 * sum(exponents)


def witness_family(a: int, k: int, table: ComplexityTable) -> LowDefectPoly:
    """``(...((m x1 + 1) x2 + 1) ...) x_k + 1`` with ``m`` chosen so the
    polynomial's defect equals the threshold ``t_a(k)``."""
    if k < 1:
        raise ValueError(f"witness family needs k >= 1, got {k}")
    m = {0: 3, 1: 2, 2: 4}[(k - a) % 3]
    f = constant(m, table)
    for _ in range(k):
        f = affine_step(f, 1, table)
    return f
