"""Exact integer complexity tables.

``build_oracle`` transcribes the recurrence directly (every sum split, every
divisor pair).  ``build_fast`` computes the same table with a pruned sum scan
and a multiplicative push pass; it is what makes tables of ~1.5e7 entries
practical.  Both kernels are compiled with numba.
"""

from __future__ import annotations

import numpy as np
from numba import njit

from .errors import EmptyRangeError, InsufficientTableError
from .exact import cube_root_breakpoints

# ||n|| <= 3 log_2 n + 1 stays below this for every n < 3**85
_MAX_CPX = 255


class ComplexityTable:
    """Dense, read-only array of ||n|| for ``1 <= n <= limit``.

    Index 0 is a placeholder holding 0 so that ``values[n] == ||n||``.
    """

    __slots__ = ("_values",)

    def __init__(self, values):
        arr = np.asarray(values, dtype=np.uint8)
        if arr.ndim != 1 or arr.size < 2:
            raise EmptyRangeError("a complexity table needs at least the entry for n=1")
        arr = arr.copy()
        arr.setflags(write=False)
        self._values = arr

    @property
    def limit(self) -> int:
        return self._values.size - 1

    @property
    def values(self) -> np.ndarray:
        """Read-only uint8 view; ``values[n]`` is ||n||."""
        return self._values

    def require(self, n: int) -> None:
        if n > self.limit:
            raise InsufficientTableError(n, self.limit)

    def __getitem__(self, n: int) -> int:
        if not 1 <= n <= self.limit:
            if n > self.limit:
                raise InsufficientTableError(n, self.limit)
            raise IndexError(f"complexity is defined for n >= 1, got {n}")
        return int(self._values[n])

    def __len__(self) -> int:
        return self.limit

    def __eq__(self, other):
        if not isinstance(other, ComplexityTable):
            return NotImplemented
        return np.array_equal(self._values, other._values)

    __hash__ = None

    def __repr__(self):
        return f"ComplexityTable(limit={self.limit})"


@njit(cache=True)
def _oracle_kernel(v, limit):
    v[1] = 1
    for n in range(2, limit + 1):
        best = _MAX_CPX
        a = 2
        while a * a <= n:
            if n % a == 0:
                s = np.int64(v[a]) + np.int64(v[n // a])
                if s < best:
                    best = s
            a += 1
        for a in range(1, n // 2 + 1):
            s = np.int64(v[a]) + np.int64(v[n - a])
            if s < best:
                best = s
        v[n] = best


@njit(cache=True)
def _fast_kernel(v, lb, limit):
    # cand[n]: best product split pushed so far; heads/nxt: per-complexity
    # linked lists of already-finished n, ascending
    cand = np.full(limit + 1, _MAX_CPX, dtype=np.uint8)
    head = np.full(_MAX_CPX + 1, -1, dtype=np.int64)
    tail = np.full(_MAX_CPX + 1, -1, dtype=np.int64)
    nxt = np.full(limit + 1, -1, dtype=np.int32)

    v[1] = 1
    head[1] = 1
    tail[1] = 1
    for n in range(2, limit + 1):
        best = np.int64(cand[n])
        half = n // 2
        # every n - a with a <= half is >= n - half, so ||n - a|| >= lb[n - half]
        bound = np.int64(lb[n - half])
        c = 1
        while c + bound < best:
            a = head[c]
            while a != -1 and a <= half:
                s = c + np.int64(v[n - a])
                if s < best:
                    best = s
                a = nxt[a]
            c += 1
        v[n] = best

        if head[best] == -1:
            head[best] = n
        else:
            nxt[tail[best]] = n
        tail[best] = n

        top = limit // n
        if top > n:
            top = n
        for b in range(2, top + 1):
            s = best + np.int64(v[b])
            m = n * b
            if s < cand[m]:
                cand[m] = s


def _check_limit(limit) -> int:
    limit = int(limit)
    if limit < 1:
        raise EmptyRangeError(f"limit must be >= 1, got {limit}")
    return limit


def build_oracle(limit: int) -> ComplexityTable:
    """Exhaustive table: every split ``a + (n-a)`` and every divisor pair."""
    limit = _check_limit(limit)
    v = np.zeros(limit + 1, dtype=np.uint8)
    _oracle_kernel(v, limit)
    return ComplexityTable(v)


def lower_bound_array(limit: int) -> np.ndarray:
    """``out[m] = ceil(3 log_3 m)`` for ``1 <= m <= limit`` (``out[0] = 0``), exact."""
    limit = _check_limit(limit)
    max_c = 1
    while 3 ** max_c < limit ** 3:
        max_c += 1
    breaks = np.array(cube_root_breakpoints(max_c), dtype=np.int64)
    m = np.arange(limit + 1, dtype=np.int64)
    out = np.searchsorted(breaks, m, side="left").astype(np.uint8)
    out[0] = 0
    return out


def build_fast(limit: int) -> ComplexityTable:
    """Same table as :func:`build_oracle`, computed with the pruned scan."""
    limit = _check_limit(limit)
    v = np.zeros(limit + 1, dtype=np.uint8)
    _fast_kernel(v, lower_bound_array(limit), limit)
    return ComplexityTable(v)


def numbers_with_complexity(table: ComplexityTable, k: int) -> list[int]:
    """All ``n`` with ``||n|| == k``, ascending.

    Raises :class:`InsufficientTableError` unless the table reaches E(k),
    the largest number of complexity k, so the answer is never truncated.
    """
    from .defect import E

    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    table.require(E(k))
    return (np.flatnonzero(table.values == k)).tolist()
