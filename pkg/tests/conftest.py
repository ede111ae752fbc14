import pytest

from intcomplexity.engine import build_fast, build_oracle


@pytest.fixture(scope="session")
def table_1e6():
    return build_fast(10**6)


@pytest.fixture(scope="session")
def oracle_1e5():
    return build_oracle(10**5)


@pytest.fixture(scope="session")
def small_table():
    return build_fast(20_000)


@pytest.fixture(scope="session")
def oracle_531441():
    # exhaustive scan, roughly a minute and a half
    return build_oracle(3 ** 12)
