"""The spectrum of largest numbers of a given complexity, and the numbers
of integer defect at most 1.

For each residue ``a`` of ``k`` mod 3 there is a decreasing sequence of
ratios ``h_{r,a}`` such that the r'th largest number of complexity at most
``k`` is ``h_{r,a} * E(k)`` once ``k >= K_{r,a}``.  The first rows are
irregular and hard-coded; after that each residue follows a closed-form
family in a parameter ``n``.  Every verification here is exact.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from functools import cmp_to_key
from typing import Iterator

import numpy as np

from .defect import (
    D,
    D_array,
    D_from_defect,
    Defect,
    E,
    L,
    compare_defect_threshold,
    compare_defects,
    defect_from_ratio,
    defect_of,
    ratio_of,
    threshold,
    Threshold,
    LOG3,
)
from .engine import ComplexityTable
from .errors import ClassificationConflictError, RankExhaustedError
from .exact import v3

F = Fraction

# (h, K) for the irregular rows, per residue of k mod 3
_FINITE = {
    0: [
        (F(1), 3), (F(8, 9), 6), (F(64, 81), 12), (F(7, 9), 12), (F(20, 27), 12),
        (F(19, 27), 12), (F(512, 729), 18), (F(56, 81), 18), (F(55, 81), 18),
        (F(164, 243), 18), (F(163, 243), 18),
    ],
    2: [
        (F(1), 2), (F(8, 9), 8), (F(5, 6), 8), (F(64, 81), 14), (F(7, 9), 14),
        (F(20, 27), 14), (F(13, 18), 14), (F(19, 27), 14), (F(512, 729), 20),
        (F(56, 81), 20), (F(37, 54), 20), (F(55, 81), 20), (F(164, 243), 20),
        (F(109, 162), 20), (F(163, 243), 20),
    ],
    1: [
        (F(1), 4), (F(8, 9), 10), (F(5, 6), 10), (F(64, 81), 16), (F(7, 9), 16),
        (F(41, 54), 16),
    ],
}

# smallest number realising each irregular row
_FINITE_LEADERS = {
    0: [3, 8, 64, 7, 20, 19, 512],
    2: [2, 16, 5, 128, 14, 40, 13, 38, 1024],
    1: [4, 32, 10, 256],
}

# first row index where the closed-form leader family applies
_LEADER_FAMILY_START = {0: 7, 2: 9, 1: 4}


@dataclass(frozen=True)
class SpectrumRow:
    r: int
    a: int
    h: Fraction
    K: int
    leader: int

    def as_csv(self) -> str:
        return f"{self.r},{self.h.numerator},{self.h.denominator},{self.K},{self.leader}"


def _family_param(r: int, a: int) -> int:
    """Family parameter ``n`` for row ``r``; meaningful past the finite rows."""
    if a == 0:
        return (r + 1) // 2
    if a == 2:
        return r // 3 + 1
    return r - 2


def _family_h(r: int, a: int) -> Fraction:
    n = _family_param(r, a)
    if a == 0:
        return F(2, 3) + (F(2, 3 ** n) if r % 2 == 1 else F(1, 3 ** n))
    if a == 2:
        return F(2, 3) + (F(2, 3 ** n), F(1, 2 * 3 ** (n - 1)), F(1, 3 ** n))[r - (3 * n - 3)]
    return F(3, 4) + F(1, 4 * 3 ** n)


def _family_K(r: int, a: int) -> int:
    n = _family_param(r, a)
    return {0: 3 * n, 2: 3 * n + 2, 1: 3 * n + 4}[a]


def _family_leader(r: int, a: int) -> int:
    n = _family_param(r, a)
    if a == 0:
        return 2 * (3 ** (n - 1) + 1) if r % 2 == 1 else 2 * 3 ** (n - 1) + 1
    if a == 2:
        j = r - (3 * n - 3)
        return (4 * (3 ** (n - 1) + 1), 4 * 3 ** (n - 2) + 1, 2 * (2 * 3 ** (n - 1) + 1))[j]
    return 3 ** (n + 1) + 1


def spectrum_row(r: int, a: int) -> SpectrumRow:
    """Row ``r`` (0-indexed) of the table for ``k = a (mod 3)``."""
    a %= 3
    if r < 0:
        raise ValueError(f"rank must be >= 0, got {r}")
    finite = _FINITE[a]
    if r < len(finite):
        h, K = finite[r]
    else:
        h, K = _family_h(r, a), _family_K(r, a)
    if r < _LEADER_FAMILY_START[a]:
        leader = _FINITE_LEADERS[a][r]
    else:
        leader = _family_leader(r, a)
    return SpectrumRow(r, a, h, K, leader)


def iter_rows(a: int) -> Iterator[SpectrumRow]:
    r = 0
    while True:
        yield spectrum_row(r, a)
        r += 1


def builtin_tables(a: int | None = None, rows: int | None = None) -> list[SpectrumRow]:
    """The irregular rows (or the first ``rows`` rows) for one or all residues."""
    residues = (0, 2, 1) if a is None else (a % 3,)
    out = []
    for res in residues:
        count = len(_FINITE[res]) if rows is None else rows
        out.extend(spectrum_row(r, res) for r in range(count))
    return out


def K_from_valuations(r: int, a: int) -> int:
    """``-3 * min_{s<=r} v3(h_s) + (0, 4, 2)[a]``, with ``K_{0,0}`` taken as 3."""
    a %= 3
    if a == 0 and r == 0:
        return 3
    lowest = min(_v3_fraction(spectrum_row(s, a).h) for s in range(r + 1))
    return -3 * lowest + (0, 4, 2)[a]


def _v3_fraction(x: Fraction) -> int:
    return v3(x.numerator) - v3(x.denominator)


# -- reports ----------------------------------------------------------------


@dataclass
class Report:
    suite: str
    parameters: dict
    passed: bool = True
    violations: list = field(default_factory=list)
    summary: dict = field(default_factory=dict)

    def fail(self, **info) -> None:
        self.passed = False
        self.violations.append(info)

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), default=str, sort_keys=True)


# -- largest numbers of bounded complexity -----------------------------------


def descending_at_most(k: int, table: ComplexityTable, count: int) -> list[int]:
    """The ``count`` largest ``n`` with ``||n|| <= k`` (fewer if exhausted)."""
    top = E(k)
    table.require(top)
    vals = table.values
    out: list[int] = []
    hi = top
    chunk = max(64, count * 8)
    while hi >= 1 and len(out) < count:
        lo = max(1, hi - chunk + 1)
        idx = np.flatnonzero(vals[lo : hi + 1] <= k)[::-1] + lo
        out.extend(idx[: count - len(out)].tolist())
        hi = lo - 1
        chunk *= 2
    return out


def top_r(k: int, r: int, table: ComplexityTable) -> int:
    """The r'th largest (0-indexed) ``n`` with ``||n|| <= k``."""
    found = descending_at_most(k, table, r + 1)
    if len(found) <= r:
        raise RankExhaustedError(f"only {len(found)} numbers have complexity <= {k}")
    return found[r]


def _rows_reaching(k: int, a: int) -> list[SpectrumRow]:
    # K is non-decreasing in r, so stop at the first row not yet in force
    rows = []
    for row in iter_rows(a):
        if row.K > k:
            break
        rows.append(row)
    return rows


def verify_tables(k_max: int, table: ComplexityTable) -> Report:
    rep = Report("tables", {"kmax": k_max})
    table.require(E(k_max))
    checked = 0
    for k in range(2, k_max + 1):
        rows = _rows_reaching(k, k % 3)
        if not rows:
            continue
        found = descending_at_most(k, table, len(rows))
        ek, below = E(k), E(k - 1)
        for row in rows:
            expected = row.h * ek
            actual = found[row.r] if row.r < len(found) else None
            checked += 1
            if expected.denominator != 1:
                rep.fail(k=k, r=row.r, expected=str(expected), actual=actual, reason="non-integral")
                continue
            expected = expected.numerator
            if actual != expected:
                rep.fail(k=k, r=row.r, expected=expected, actual=actual, reason="rank mismatch")
            elif table[expected] != k:
                rep.fail(k=k, r=row.r, expected=k, actual=table[expected], reason="complexity")
            elif not expected > below:
                rep.fail(k=k, r=row.r, expected=f">{below}", actual=expected, reason="not above E(k-1)")
    rep.summary["rows_checked"] = checked
    return rep


# -- numbers with D(n) <= 1 --------------------------------------------------


@dataclass(frozen=True)
class ClassifiedForm:
    kind: str  # "one" | "pow2_pow3" | "step_form"
    parameters: tuple[int, ...]
    claimed_complexity: int
    n: int


def classified_forms(limit: int) -> Iterator[ClassifiedForm]:
    """Every instance ``<= limit`` of the three forms with ``D(n) <= 1``."""
    if limit >= 1:
        yield ClassifiedForm("one", (), 1, 1)
    for a in range(11):
        k = 0
        while 2 ** a * 3 ** k <= limit:
            if (a, k) != (0, 0):
                yield ClassifiedForm("pow2_pow3", (a, k), 2 * a + 3 * k, 2 ** a * 3 ** k)
            k += 1
    for a in range(3):
        for b in range(3 - a):
            ell = 0
            while 2 ** a * (2 ** b * 3 ** ell + 1) <= limit:
                if (b, ell) != (0, 0):
                    core = 2 ** a * (2 ** b * 3 ** ell + 1)
                    k = 0
                    while core * 3 ** k <= limit:
                        yield ClassifiedForm(
                            "step_form",
                            (a, b, ell, k),
                            2 * (a + b) + 3 * (ell + k) + 1,
                            core * 3 ** k,
                        )
                        k += 1
                ell += 1


def classify_D_le_1(limit: int) -> list[tuple[int, int]]:
    """Sorted ``(n, claimed complexity)`` for all classified ``n <= limit``."""
    claims: dict[int, ClassifiedForm] = {}
    for form in classified_forms(limit):
        prev = claims.get(form.n)
        if prev is not None and prev.claimed_complexity != form.claimed_complexity:
            raise ClassificationConflictError(
                f"{form.n}: {prev.kind}{prev.parameters} claims {prev.claimed_complexity}, "
                f"{form.kind}{form.parameters} claims {form.claimed_complexity}"
            )
        claims.setdefault(form.n, form)
    return sorted((n, f.claimed_complexity) for n, f in claims.items())


def verify_classification(limit: int, table: ComplexityTable) -> Report:
    rep = Report("classify", {"limit": limit})
    table.require(limit)
    d = D_array(table)[: limit + 1]
    actual = set((np.flatnonzero(d[1:] <= 1) + 1).tolist())
    claimed = dict(classify_D_le_1(limit))
    for n in sorted(actual - claimed.keys()):
        rep.fail(n=n, expected="classified", actual=f"D={int(d[n])}", reason="missing form")
    for n in sorted(claimed.keys() - actual):
        rep.fail(n=n, expected="D<=1", actual=f"D={int(d[n])}", reason="spurious form")
    for n, c in claimed.items():
        if table[n] != c:
            rep.fail(n=n, expected=c, actual=table[n], reason="claimed complexity")
    rep.summary["count"] = len(claimed)
    return rep


# -- checks tying rows to defects -------------------------------------------


def _rows_integral_at(k: int) -> Iterator[SpectrumRow]:
    """Rows whose ``h * E(k)`` could be integral; past the irregular rows the
    3-adic valuation of ``h`` is at least ``-n`` and drops with the family
    parameter, so iteration stops once it cannot reach ``v3(E(k))``."""
    a = k % 3
    ve = v3(E(k))
    n_finite = max(len(_FINITE[a]), _LEADER_FAMILY_START[a])
    for row in iter_rows(a):
        if row.r >= n_finite and _family_param(row.r, a) - 1 > ve:
            return
        yield row


def v3lem_check(k: int, table: ComplexityTable) -> Report:
    rep = Report("v3lem", {"k": k})
    if k < 2:
        raise ValueError(f"needs k >= 2, got {k}")
    ek = E(k)
    table.require(ek)
    hits = 0
    for row in _rows_integral_at(k):
        x = row.h * ek
        if x.denominator != 1:
            continue
        n = x.numerator
        hits += 1
        if table[n] != k:
            rep.fail(k=k, r=row.r, expected=k, actual=table[n], reason="complexity")
        if not n > E(k - 1):
            rep.fail(k=k, r=row.r, expected=f">{E(k - 1)}", actual=n, reason="not above E(k-1)")
    rep.summary["integral_rows"] = hits
    return rep


def row_defect(row: SpectrumRow) -> Defect:
    return defect_from_ratio(row.h, row.a)


def _float_defects(table: ComplexityTable, limit: int) -> np.ndarray:
    n = np.arange(limit + 1, dtype=np.float64)
    n[0] = 1.0
    return table.values[: limit + 1].astype(np.float64) - 3.0 * np.log(n) / LOG3


def initial_segment(a: int, bound: Threshold, limit: int, table: ComplexityTable) -> list[Defect]:
    """Distinct defects of ``1 < n <= limit`` with ``||n|| = a (mod 3)`` that
    lie strictly below ``bound``, in increasing order."""
    table.require(limit)
    approx = _float_defects(table, limit)
    vals = table.values[: limit + 1]
    # float only narrows the candidate set; the exact comparison decides
    cand = np.flatnonzero((approx < bound.value + 1e-6) & (vals % 3 == a % 3))
    seen: dict = {}
    for n in cand.tolist():
        if n < 2:
            continue
        d = Defect(int(vals[n]), n)
        if compare_defect_threshold(d, bound) < 0:
            seen.setdefault(d.key(), d)
    return sorted(seen.values(), key=cmp_to_key(compare_defects))


def rows_with_leader_at_most(a: int, limit: int) -> list[SpectrumRow]:
    """All rows of residue ``a`` whose leader is ``<= limit``."""
    a %= 3
    first_family = max(len(_FINITE[a]), _LEADER_FAMILY_START[a])
    out = []
    for row in iter_rows(a):
        # family leaders of parameter n all exceed 3**(n-1)
        if row.r >= first_family and 3 ** (_family_param(row.r, a) - 1) > limit:
            break
        if row.leader <= limit:
            out.append(row)
    return out


def verify_initial_segment(a: int, limit: int, table: ComplexityTable) -> Report:
    """Defects below ``t_a(1)`` against the rows of residue ``a``.

    A row's defect is first reached at its leader, so the rows discoverable
    at this limit are exactly those with ``leader <= limit``; the
    guaranteed-complete prefix is the longest run of such rows from r=0.
    """
    rep = Report("initial_segment", {"a": a, "limit": limit})
    found = initial_segment(a, threshold(a, 1), limit, table)

    expected_rows = rows_with_leader_at_most(a, limit)
    prefix = 0
    while prefix < len(expected_rows) and expected_rows[prefix].r == prefix:
        prefix += 1
    expected = [row_defect(row) for row in expected_rows]

    for row in expected_rows:
        d = row_defect(row)
        if defect_of(row.leader, table) != d:
            rep.fail(r=row.r, expected=repr(d), actual=repr(defect_of(row.leader, table)),
                     reason="leader defect")
        if ratio_of(row.leader, table) != row.h:
            rep.fail(r=row.r, expected=str(row.h), actual=str(ratio_of(row.leader, table)),
                     reason="leader ratio")
    for i in range(min(prefix, len(found))):
        if found[i] != expected[i]:
            rep.fail(r=i, expected=repr(expected[i]), actual=repr(found[i]), reason="prefix order")
    if len(found) < prefix:
        rep.fail(expected=prefix, actual=len(found), reason="prefix too short")
    if set(found) != set(expected):
        extra = sorted(set(found) - set(expected), key=cmp_to_key(compare_defects))
        missing = sorted(set(expected) - set(found), key=cmp_to_key(compare_defects))
        rep.fail(expected=[repr(x) for x in missing], actual=[repr(x) for x in extra],
                 reason="defect set mismatch")
    if found != sorted(expected, key=cmp_to_key(compare_defects)):
        rep.fail(reason="order mismatch")
    rep.summary.update(found=len(found), guaranteed_prefix=prefix,
                       leaders=[d.base for d in found[:12]])
    return rep


def verify_reverse_omega(a: int, limit: int, table: ComplexityTable) -> Report:
    """Distinct ratios of classified numbers of residue ``a``, sorted
    descending, equal the table's ``h`` values whose leaders are in range."""
    rep = Report("reverse_omega", {"a": a, "limit": limit})
    ratios = {F(n, E(c)) for n, c in classify_D_le_1(limit) if n > 1 and c % 3 == a % 3}
    got = sorted(ratios, reverse=True)
    want = [row.h for row in rows_with_leader_at_most(a, limit)]
    if got != want:
        rep.fail(expected=[str(h) for h in want], actual=[str(h) for h in got], reason="ratio sequence")
    for i in range(1, len(got)):
        if not got[i] < got[i - 1]:
            rep.fail(index=i, reason="not strictly decreasing")
    rep.summary["ratios"] = len(got)
    return rep


def verify_small3(limit: int, table: ComplexityTable) -> Report:
    """Every defect ``<= 2 delta(2)`` among ``n <= limit`` is that of
    ``3^k``, ``2*3^k`` or ``4*3^k``, and exactly three values occur."""
    rep = Report("small3", {"limit": limit})
    table.require(limit)
    cap = Defect(4, 4)  # 2*delta(2) = 4 - 3 log3 4
    approx = _float_defects(table, limit)
    cand = np.flatnonzero(approx <= cap.value + 1e-6).tolist()
    values = set()
    members = []
    for n in cand:
        if n < 1:
            continue
        d = defect_of(n, table)
        if compare_defects(d, cap) > 0:
            continue
        members.append(n)
        values.add(d)
        m = n
        while m % 3 == 0:
            m //= 3
        if m not in (1, 2, 4) or n == 1:
            rep.fail(n=n, expected="3^k, 2*3^k or 4*3^k", actual=n, reason="form")
    if values != {Defect(3, 3), Defect(2, 2), Defect(4, 4)}:
        rep.fail(expected=3, actual=sorted(repr(v) for v in values), reason="distinct values")
    rep.summary.update(members=len(members), distinct=len(values))
    return rep


def verify_dtod(limit: int, table: ComplexityTable) -> Report:
    rep = Report("dtod", {"limit": limit})
    table.require(limit)
    d = D_array(table)
    vals = table.values
    for n in range(2, limit + 1):
        got = D_from_defect(Defect(int(vals[n]), n))
        if got != d[n]:
            rep.fail(n=n, expected=int(d[n]), actual=got)
    return rep


def verify_dinterp(limit: int, table: ComplexityTable) -> Report:
    from .defect import Dinterp_count

    rep = Report("dinterp", {"limit": limit})
    table.require(limit)
    d = D_array(table)
    for n in range(1, limit + 1):
        got = Dinterp_count(n, table)
        if got != d[n]:
            rep.fail(n=n, expected=int(d[n]), actual=got)
    return rep


def find_coincidence(n: int, table: ComplexityTable):
    """``(ell, k, r)`` with ``k >= K_{r, k mod 3}`` and ``3**ell n = h_{r,k} E(k)``,
    or ``None`` if no row has ratio ``R(n)``."""
    if n == 1:
        # R(1) = 1 sits in no residue class; 3 * 1 = h_{0,0} E(3) instead
        return (1, 3, 0)
    c = table[n]
    h = F(n, E(c))
    # rows decrease towards this infimum without reaching it
    if h <= (F(3, 4) if c % 3 == 1 else F(2, 3)):
        return None
    for row in iter_rows(c % 3):
        if row.h < h:
            return None
        if row.h == h:
            k = c
            while k < row.K:
                k += 3
            return ((k - c) // 3, k, row.r)
    return None


def coincicor_check(limit: int, table: ComplexityTable) -> Report:
    rep = Report("coinci", {"limit": limit})
    table.require(limit)
    d = D_array(table)
    low = (np.flatnonzero(d[1 : limit + 1] <= 1) + 1).tolist()
    for n in low:
        hit = find_coincidence(n, table)
        if hit is None:
            rep.fail(n=n, reason="no row matches")
            continue
        ell, k, r = hit
        row = spectrum_row(r, k % 3)
        if not (k >= row.K and 3 ** ell * n == row.h * E(k)):
            rep.fail(n=n, ell=ell, k=k, r=r, reason="bad witness")
    # converse: every in-range product h_{r,a} E(k) with k >= K has D <= 1,
    # and so does every cofactor after removing powers of 3
    products = 0
    k = 2
    while F(2, 3) * E(k) <= limit:
        for row in _rows_reaching(k, k % 3):
            m = row.h * E(k)
            if m.denominator != 1 or m > limit:
                continue
            m = m.numerator
            while True:
                products += 1
                if d[m] > 1:
                    rep.fail(k=k, r=row.r, n=m, expected="D<=1", actual=int(d[m]))
                if m % 3:
                    break
                m //= 3
        k += 1
    rep.summary.update(low_defect=len(low), products=products)
    return rep
