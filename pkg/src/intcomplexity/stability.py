"""Bounded-horizon estimates of stable complexity and stable defects.

The true stable complexity is ``min_k ||3**k n|| - 3k`` over *all* k; a
finite table only sees ``k <= horizon``.  A report is marked ``certified``
only when a sound rule shows the minimum cannot drop further:

* the minimising point ``3**k n`` has ``D <= 2``, hence is stable; or
* the integer drops seen so far already total ``floor(delta(n))``, so the
  remaining defect is below 1 and no further integer drop is possible.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

from .defect import D, Defect, L
from .engine import ComplexityTable


class Estimate(NamedTuple):
    value: object
    certified: bool


@dataclass(frozen=True)
class StabilityReport:
    n: int
    horizon: int
    complexities: tuple[int, ...]
    stable_cpx_estimate: int
    first_stable_k: int
    certified: bool
    rule: str = field(default="")

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "horizon": self.horizon,
            "complexities": list(self.complexities),
            "stable_cpx_estimate": self.stable_cpx_estimate,
            "first_stable_k": self.first_stable_k,
            "certified": self.certified,
            "rule": self.rule,
        }


def default_horizon(n: int, table: ComplexityTable) -> int:
    """Largest ``K`` with ``3**K * n <= table.limit``."""
    table.require(n)
    k = 0
    while 3 ** (k + 1) * n <= table.limit:
        k += 1
    return k


def probe(n: int, horizon: int | None, table: ComplexityTable) -> StabilityReport:
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if horizon is None:
        horizon = default_horizon(n, table)
    if horizon < 0:
        raise ValueError(f"horizon must be >= 0, got {horizon}")
    table.require(3 ** horizon * n)

    cpx = tuple(table[3 ** k * n] for k in range(horizon + 1))
    shifted = [c - 3 * k for k, c in enumerate(cpx)]
    est = min(shifted)
    k_min = shifted.index(est)

    rule = ""
    if D(3 ** k_min * n, table) <= 2:
        rule = "D<=2"
    elif cpx[0] - est == Defect(cpx[0], n).floor():
        rule = "drop-budget"
    return StabilityReport(n, horizon, cpx, est, k_min, bool(rule), rule)


def D_st(n: int, horizon: int | None, table: ComplexityTable) -> Estimate:
    """``min_k D(3**k n)`` over the horizon, with the probe's certification."""
    rep = probe(n, horizon, table)
    best = min(D(3 ** k * n, table) for k in range(rep.horizon + 1))
    return Estimate(best, rep.certified)


def delta_st(n: int, horizon: int | None, table: ComplexityTable) -> Estimate:
    rep = probe(n, horizon, table)
    return Estimate(Defect(rep.stable_cpx_estimate, n), rep.certified)


def stable_D_from_estimate(n: int, rep: StabilityReport) -> int:
    """``||n||_st - L(n)``; agrees with :func:`D_st` for ``n > 1``."""
    return rep.stable_cpx_estimate - L(n)
