import pytest

from isogeny_sums.arithmetic.modular import primes_between
from isogeny_sums.curves.isogeny import TwoIsogenyPair

SMALL_PRIMES = primes_between(5, 97)


@pytest.fixture
def small_primes() -> list[int]:
    return list(SMALL_PRIMES)


@pytest.fixture
def pair_2_minus1_11() -> TwoIsogenyPair:
    """E1: y^2 = x^3 + 2x^2 - x over F_11, r = 8."""
    return TwoIsogenyPair.from_integers(2, -1, 11)


@pytest.fixture
def tiny_pair() -> TwoIsogenyPair:
    """(a, b) = (0, 2) over F_5: E2(F_5) is just {inf, (0, 0)}."""
    return TwoIsogenyPair.from_integers(0, 2, 5)


@pytest.fixture(autouse=True)
def no_worker_env(monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.delenv("ISOGENY_SUMS_WORKERS", raising=False)
