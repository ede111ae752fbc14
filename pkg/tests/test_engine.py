import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from intcomplexity import (
    EmptyRangeError,
    InsufficientTableError,
    build_fast,
    build_oracle,
    numbers_with_complexity,
)
from intcomplexity.engine import ComplexityTable, lower_bound_array
from intcomplexity.exact import ceil_3log3


def naive_complexities(limit):
    """Plain-Python transcription of the recurrence, used as a second oracle."""
    v = [0, 1]
    for n in range(2, limit + 1):
        best = min(v[a] + v[n - a] for a in range(1, n // 2 + 1))
        for a in range(2, int(n ** 0.5) + 1):
            if n % a == 0:
                best = min(best, v[a] + v[n // a])
        v.append(best)
    return v


def test_oracle_matches_plain_python():
    assert build_oracle(600).values.tolist() == naive_complexities(600)


def test_oracle_examples(oracle_531441):
    assert build_oracle(11)[11] == 8
    assert build_oracle(1)[1] == 1
    assert oracle_531441[3 ** 12] == 36


def test_fast_examples():
    assert build_fast(321)[321] == 18
    assert build_fast(2049)[2049] == 23


def test_fast_equals_oracle(oracle_1e5):
    assert build_fast(10 ** 5) == oracle_1e5


@pytest.mark.parametrize("limit", [1, 2, 3, 4, 5, 17, 64, 81, 242, 243, 244])
def test_fast_equals_oracle_small_limits(limit):
    assert build_fast(limit) == build_oracle(limit)


@pytest.mark.parametrize("builder", [build_oracle, build_fast])
def test_empty_range(builder):
    with pytest.raises(EmptyRangeError):
        builder(0)


def test_first_entries(small_table):
    assert small_table.values[1:4].tolist() == [1, 2, 3]


def test_table_is_read_only(small_table):
    with pytest.raises(ValueError):
        small_table.values[5] = 1


def test_out_of_range(small_table):
    with pytest.raises(InsufficientTableError):
        small_table[small_table.limit + 1]
    with pytest.raises(IndexError):
        small_table[0]


def test_lower_bound_array():
    lb = lower_bound_array(5000)
    assert [int(lb[m]) for m in range(1, 5001)] == [ceil_3log3(m) for m in range(1, 5001)]


def test_bounds_hold(table_1e6):
    v = table_1e6.values.astype(np.int64)
    n = np.arange(table_1e6.limit + 1)
    lb = lower_bound_array(table_1e6.limit).astype(np.int64)
    assert np.all(v[1:] >= lb[1:])
    # upper bound: ceil(3 log2 n) + 1
    ub = np.array([3 * (int(x).bit_length()) + 1 for x in n[1:]])
    assert np.all(v[1:] <= ub)


def test_lower_bound_exact_cube_form(small_table):
    for n in range(1, small_table.limit + 1):
        assert 3 ** small_table[n] >= n ** 3


def test_times_three_at_most_plus_three(table_1e6):
    v = table_1e6.values.astype(np.int64)
    top = table_1e6.limit // 3
    n = np.arange(2, top + 1)
    assert np.all(v[3 * n] <= v[n] + 3)


@settings(max_examples=300)
@given(st.integers(1, 999), st.integers(1, 999))
def test_sub_multiplicative_and_additive(a, b):
    from intcomplexity.engine import build_fast

    t = _shared_table()
    assert t[a * b] <= t[a] + t[b]
    assert t[a + b] <= t[a] + t[b]


def test_random_pairs_bulk(table_1e6):
    rng = np.random.default_rng(12345)
    v = table_1e6.values.astype(np.int64)
    a = rng.integers(1, 1000, 10 ** 5)
    b = rng.integers(1, 1000, 10 ** 5)
    assert np.all(v[a * b] <= v[a] + v[b])
    a = rng.integers(1, 500_000, 10 ** 5)
    b = rng.integers(1, 500_000, 10 ** 5)
    assert np.all(v[a + b] <= v[a] + v[b])


def test_witness_decomposition_exists(small_table):
    v = small_table.values.astype(np.int64)
    for n in range(2, small_table.limit + 1, 7):
        a = np.arange(1, n // 2 + 1)
        d = np.arange(2, int(n ** 0.5) + 1)
        d = d[n % d == 0]
        best = min((v[a] + v[n - a]).min(), (v[d] + v[n // d]).min(initial=255))
        assert best == v[n], n


_CACHE = {}


def _shared_table():
    if "t" not in _CACHE:
        _CACHE["t"] = build_fast(10 ** 6)
    return _CACHE["t"]


def test_numbers_with_complexity():
    assert numbers_with_complexity(build_fast(9), 3) == [3]
    assert numbers_with_complexity(build_fast(9), 1) == [1]
    got = numbers_with_complexity(build_fast(18), 6)
    assert got[-2:] == [8, 9]


def test_numbers_with_complexity_needs_full_range():
    with pytest.raises(InsufficientTableError):
        numbers_with_complexity(build_fast(100), 14)  # E(14) = 162


def test_numbers_with_complexity_matches_scan(small_table):
    for k in range(1, 25):
        expected = [n for n in range(1, small_table.limit + 1) if small_table[n] == k]
        assert numbers_with_complexity(small_table, k) == expected


def test_table_constructor_validation():
    with pytest.raises(EmptyRangeError):
        ComplexityTable([0])
