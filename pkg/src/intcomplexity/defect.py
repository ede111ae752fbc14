"""Defect calculus: E, L, D, exact defects, thresholds and ratios.

A defect ``c - 3 log_3 n`` is irrational unless ``n`` is a power of 3, so it
is never materialised as a float for decisions.  Two defects compare by the
sign of ``3**c1 * n2**3 - 3**c2 * n1**3``; a threshold ``k + m*delta(2)``
compares against ``c - 3 log_3 n`` by the sign of
``3**c * 2**(3m) - n**3 * 3**(k+2m)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, total_ordering

import numpy as np

from .engine import ComplexityTable
from .errors import ExcludedCaseError, UndefinedArgumentError
from .exact import floor_log, v3

LOG3 = math.log(3)


def _sign(x: int) -> int:
    return (x > 0) - (x < 0)


@lru_cache(maxsize=4096)
def _pow3(e: int) -> int:
    return 3 ** e


def E(k: int) -> int:
    """Largest number expressible with ``k`` ones."""
    if k < 1:
        raise UndefinedArgumentError(f"E(k) needs k >= 1, got {k}")
    if k == 1:
        return 1
    r = k % 3
    if r == 0:
        return 3 ** (k // 3)
    if r == 1:
        return 4 * 3 ** ((k - 4) // 3)
    return 2 * 3 ** ((k - 2) // 3)


def L(n: int) -> int:
    """Largest ``k`` with ``E(k) <= n``."""
    if n < 1:
        raise UndefinedArgumentError(f"L(n) needs n >= 1, got {n}")
    best = 1
    j = floor_log(3, n)
    if j >= 1:
        best = max(best, 3 * j)
    if n >= 2:
        best = max(best, 3 * floor_log(3, n // 2) + 2)
    if n >= 4:
        best = max(best, 3 * floor_log(3, n // 4) + 4)
    return best


def L_array(limit: int) -> np.ndarray:
    """``out[n] = L(n)`` for ``1 <= n <= limit`` (``out[0] = 0``)."""
    ks = [1]
    while E(ks[-1] + 1) <= limit:
        ks.append(ks[-1] + 1)
    evals = np.array([E(k) for k in ks], dtype=np.int64)
    n = np.arange(limit + 1, dtype=np.int64)
    # E is strictly increasing and E(1) = 1, so L(n) = #{k : E(k) <= n}
    out = np.searchsorted(evals, n, side="right").astype(np.int16)
    return out


def D(n: int, table: ComplexityTable) -> int:
    """Integer defect ``||n|| - L(n)``."""
    return table[n] - L(n)


def D_array(table: ComplexityTable) -> np.ndarray:
    out = table.values.astype(np.int16) - L_array(table.limit)
    out[0] = 0
    return out


@total_ordering
@dataclass(frozen=True, eq=False)
class Defect:
    """The real number ``complexity - 3 log_3 base``, ordered exactly.

    Equality and hashing are by value, so ``Defect(3, 3) == Defect(6, 9)``.
    """

    complexity: int
    base: int

    def __post_init__(self):
        if self.base < 1:
            raise ValueError(f"defect base must be >= 1, got {self.base}")

    @property
    def value(self) -> float:
        """Float approximation; display only."""
        return self.complexity - 3 * math.log(self.base) / LOG3

    def key(self) -> tuple[int, int]:
        """Canonical form: powers of 3 moved out of the base."""
        e = v3(self.base)
        return (self.complexity - 3 * e, self.base // 3 ** e)

    def floor(self) -> int:
        """Exact floor of the value."""
        k = math.floor(self.value) + 1
        while compare_defect_value(self, k) < 0:
            k -= 1
        while compare_defect_value(self, k + 1) >= 0:
            k += 1
        return k

    def __eq__(self, other):
        if not isinstance(other, Defect):
            return NotImplemented
        return self.key() == other.key()

    def __lt__(self, other):
        if not isinstance(other, Defect):
            return NotImplemented
        return compare_defects(self, other) < 0

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"Defect({self.complexity}, {self.base})"


def compare_defects(d1: Defect, d2: Defect) -> int:
    """-1, 0 or 1 as ``d1 <, ==, > d2``.

    ``c1 - 3log3 n1`` vs ``c2 - 3log3 n2`` is ``3**c1 * n2**3`` vs ``3**c2 * n1**3``.
    """
    c1, n1 = d1.complexity, d1.base
    c2, n2 = d2.complexity, d2.base
    if c1 >= c2:
        return _sign(_pow3(c1 - c2) * n2 ** 3 - n1 ** 3)
    return _sign(n2 ** 3 - _pow3(c2 - c1) * n1 ** 3)


def compare_defect_value(d: Defect, q) -> int:
    """Sign of ``d - q`` for an integer or Fraction ``q``."""
    q = Fraction(q)
    # c - 3log3 n  vs  p/s   <=>  3**(s c - p) vs n**(3 s)
    p, s = q.numerator, q.denominator
    e = s * d.complexity - p
    lhs = 3 ** e if e >= 0 else 1
    rhs = d.base ** (3 * s) * (3 ** -e if e < 0 else 1)
    return _sign(lhs - rhs)


DELTA2 = Defect(2, 2)


@dataclass(frozen=True)
class Threshold:
    """The value ``k + m * delta(2)`` with ``m`` in {0, 1, 2}."""

    k: int
    m: int

    def __post_init__(self):
        if self.m not in (0, 1, 2):
            raise ValueError(f"threshold multiplier must be 0, 1 or 2, got {self.m}")
        if self.k < 0:
            raise ValueError(f"threshold k must be >= 0, got {self.k}")

    @property
    def value(self) -> float:
        return self.k + self.m * DELTA2.value


def threshold(a: int, k: int) -> Threshold:
    """The changeover point ``t_a(k)``."""
    return Threshold(k, (k - a) % 3)


def compare_defect_threshold(d: Defect, t: Threshold) -> int:
    """Sign of ``delta - t``: ``3**c * 2**(3m)`` vs ``n**3 * 3**(k+2m)``."""
    c, n = d.complexity, d.base
    lhs_e, rhs_e = c, t.k + 2 * t.m
    lhs = 8 ** t.m
    rhs = n ** 3
    if lhs_e >= rhs_e:
        lhs *= _pow3(lhs_e - rhs_e)
    else:
        rhs *= _pow3(rhs_e - lhs_e)
    return _sign(lhs - rhs)


def defect_of(n: int, table: ComplexityTable) -> Defect:
    return Defect(table[n], n)


def D_from_defect(d: Defect) -> int:
    """Smallest ``k`` with ``delta <= t_c(k)`` where ``c`` is the complexity."""
    if d.base <= 1:
        raise ExcludedCaseError("n = 1 is excluded from the defect/threshold relation")
    a = d.complexity % 3
    for k in range(d.complexity + 1):
        if compare_defect_threshold(d, threshold(a, k)) <= 0:
            return k
    raise ValueError(f"{d!r} exceeds every threshold up to its complexity")


def ratio_of(n: int, table: ComplexityTable) -> Fraction:
    """``R(n) = n / E(||n||)`` in lowest terms."""
    return Fraction(n, E(table[n]))


def defect_from_ratio(h: Fraction, a: int) -> Defect:
    """Defect of a number with ratio ``h`` and complexity congruent to ``a``.

    Uses ``delta = -3 log3 h + m*delta(2)`` with ``m = 0, 2, 1`` for
    ``a = 0, 1, 2``, rewritten as ``2m - 3 log3(h * 2**m)`` and then with the
    3-power denominator cleared into the complexity.
    """
    m = (0, 2, 1)[a % 3]
    x = Fraction(h) * 2 ** m
    den = x.denominator
    e = v3(den)
    if den != 3 ** e:
        raise ValueError(f"ratio {h} does not come from an integer of residue {a}")
    return Defect(2 * m + 3 * e, x.numerator)


def Dinterp_count(n: int, table: ComplexityTable) -> int:
    """``#{k : n < E(k) <= E(||n||)}`` by direct enumeration."""
    c = table[n]
    top = E(c)
    return sum(1 for k in range(1, c + 1) if n < E(k) <= top)


def Dinterp_check(n: int, table: ComplexityTable) -> bool:
    return Dinterp_count(n, table) == D(n, table)
