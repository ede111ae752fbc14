"""Exact integer logarithm helpers.

Everything here works on Python ints so results never depend on float
rounding near powers of 3.
"""

from __future__ import annotations

import math


def floor_log(base: int, n: int) -> int:
    """Largest ``j >= 0`` with ``base**j <= n``. Requires ``n >= 1``."""
    if n < 1:
        raise ValueError("floor_log needs n >= 1")
    j = 0
    p = base
    while p <= n:
        p *= base
        j += 1
    return j


def icbrt(n: int) -> int:
    """Integer cube root: largest ``m`` with ``m**3 <= n``."""
    if n < 0:
        raise ValueError("icbrt needs n >= 0")
    if n < 2:
        return n
    m = 1 << ((n.bit_length() + 2) // 3)
    # Newton from above converges monotonically for integer roots
    while True:
        m2 = (2 * m + n // (m * m)) // 3
        if m2 >= m:
            break
        m = m2
    while m ** 3 > n:
        m -= 1
    while (m + 1) ** 3 <= n:
        m += 1
    return m


def ceil_3log3(n: int) -> int:
    """Smallest integer ``c`` with ``3**c >= n**3``, i.e. ceil(3 log_3 n)."""
    if n < 1:
        raise ValueError("ceil_3log3 needs n >= 1")
    target = n ** 3
    # float guess, then exact correction
    c = max(0, int(3 * math.log(n, 3)) - 1)
    while 3 ** c >= target and c > 0:
        c -= 1
    while 3 ** c < target:
        c += 1
    return c


def v3(x: int) -> int:
    """3-adic valuation of a nonzero integer."""
    if x == 0:
        raise ValueError("v3(0) is undefined")
    x = abs(x)
    k = 0
    while x % 3 == 0:
        x //= 3
        k += 1
    return k


def cube_root_breakpoints(max_c: int) -> list[int]:
    """``icbrt(3**c)`` for ``c = 0..max_c``; the sorted boundaries of ceil_3log3."""
    return [icbrt(3 ** c) for c in range(max_c + 1)]
