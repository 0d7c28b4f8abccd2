"""
Primes at which R_{a,b} vanishes, and the congruence classes that carry them.
"""

from math import gcd, lcm

from sympy import divisors, isprime, primefactors

from isogeny_sums.arithmetic.modular import primes_between
from isogeny_sums.curves.weierstrass import good_reduction_pair
from isogeny_sums.exceptions import BadReductionError, NoWitnessPrimeError
from isogeny_sums.sums.charsums import error_R, legendre_prefix_sum
from isogeny_sums.sums.models import VanishingReport
from isogeny_sums.utilities.logger import get_logger, log_check

logger = get_logger("isogeny_sums")

DEFAULT_SCAN_CAP = 2_000_000


def periodicity_modulus(a: int) -> int:
    """4 lcm(2, ..., |a| - 1), with the empty lcm taken as 1."""
    if a == 0:
        raise ValueError("periodicity modulus needs |a| >= 1")
    return 4 * lcm(*range(2, abs(a)))


def working_modulus(a: int, b: int) -> int:
    """
    Period of R_{a,b}(p) in p.

    The Legendre sum is periodic mod periodicity_modulus(a) for a > 0;
    delta_{-b} needs 4|b|, and a < 0 brings in the symbols (-j/p), j <= |a|.
    """
    modulus = lcm(periodicity_modulus(a), 4 * abs(b))
    if a < 0:
        modulus = lcm(modulus, 4 * abs(a))
    return modulus


def error_R_periodic_part(a: int, p: int) -> int:
    """sum_{x=1}^{{a}-1} (x/p)."""
    return legendre_prefix_sum(a % p - 1, p)


def bad_primes(a: int, b: int) -> list[int]:
    """Primes p > 3 dividing 2b(a^2 - 4b)."""
    product = 2 * b * (a * a - 4 * b)
    if product == 0:
        raise BadReductionError(f"(a, b) = ({a}, {b}) is singular at every prime")
    return [q for q in primefactors(product) if q > 3]


def vanishing_primes(a: int, b: int, limit: int, lower: int | None = None) -> list[int]:
    """
    Primes lower < p <= limit of good reduction with R_{a,b}(p) = 0.

    :param a: Integer parameter
    :param b: Integer parameter
    :param limit: Upper bound, inclusive
    :param lower: Exclusive lower bound, |a| by default and never below 3
    :return: Ascending list
    """
    lower = abs(a) if lower is None else lower
    return [
        p
        for p in primes_between(max(lower, 3) + 1, limit)
        if good_reduction_pair(a, b, p) and error_R(a, b, p) == 0
    ]


def _class_primes(
    residue: int, modulus: int, start: int, count: int, a: int, b: int, cap: int
) -> list[int]:
    """First `count` primes p > start, p = residue mod modulus, of good reduction."""
    found: list[int] = []
    p = start + 1 + (residue - start - 1) % modulus
    while len(found) < count:
        if p > cap:
            raise NoWitnessPrimeError(
                f"class {residue} mod {modulus} has no prime below {cap}"
            )
        if isprime(p) and good_reduction_pair(a, b, p):
            found.append(p)
        p += modulus
    return found


def _minimal_modulus(status: dict[int, bool], modulus: int) -> int:
    for candidate in divisors(modulus):
        seen: dict[int, bool] = {}
        if all(
            seen.setdefault(residue % candidate, vanishes) == vanishes
            for residue, vanishes in status.items()
        ):
            return int(candidate)
    return modulus


def vanishing_residues(
    a: int,
    b: int,
    scan_cap: int = DEFAULT_SCAN_CAP,
    extra_checks: int = 2,
) -> VanishingReport:
    """
    Classify every coprime class mod the working modulus as vanishing or not.

    Each class is decided at its smallest good prime above max(|a|, 2|b|) and
    re-checked at `extra_checks` further primes; the modulus is then reduced
    to the smallest divisor on whose classes vanishing is constant.

    :param a: Integer parameter, a != 0
    :param b: Integer parameter
    :param scan_cap: Largest prime tried when looking for class representatives
    :param extra_checks: Further primes per class used to confirm periodicity
    :return: The report
    """
    W = working_modulus(a, b)
    start = max(abs(a), 2 * abs(b), 3)
    excluded = bad_primes(a, b)
    logger.debug(f"classifying classes mod {W} for (a, b) = ({a}, {b})")

    status: dict[int, bool] = {}
    witnesses: list[int] = []
    unresolved: list[int] = []
    failures: list[int] = []
    for residue in range(W):
        if gcd(residue, W) != 1:
            continue
        try:
            primes = _class_primes(residue, W, start, 1 + extra_checks, a, b, scan_cap)
        except NoWitnessPrimeError as e:
            logger.warning(str(e))
            unresolved.append(residue)
            continue
        values = [error_R(a, b, p) for p in primes]
        status[residue] = values[0] == 0
        witnesses.extend(p for p, value in zip(primes, values) if value == 0)
        if not log_check(
            logger, "periodicity", len(set(values)) == 1, residue=residue, primes=primes
        ):
            failures.append(residue)

    M = _minimal_modulus(status, W)
    residues = sorted({residue % M for residue, vanishes in status.items() if vanishes})
    small = {
        p: error_R(a, b, p)
        for p in primes_between(5, abs(a))
        if good_reduction_pair(a, b, p)
    }
    return VanishingReport(
        a=a,
        b=b,
        modulus=M,
        residues=residues,
        witnesses=sorted(witnesses),
        exhaustive_below=scan_cap,
        working_modulus=W,
        small_primes=small,
        bad_primes=excluded,
        unresolved=unresolved,
        periodicity_failures=failures,
    )


def never_vanishes(a: int, b: int, scan_cap: int = DEFAULT_SCAN_CAP) -> bool:
    """Whether R_{a,b}(p) is nonzero for every prime p > max(|a|, 2|b|)."""
    return not vanishing_residues(a, b, scan_cap).residues
