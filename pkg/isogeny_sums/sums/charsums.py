"""
Weighted character sums over 2-isogenous curves and their error terms.

Every sum is evaluated by direct enumeration; the closed forms it should
equal are checked against it and logged, never substituted for it.
"""

from isogeny_sums.arithmetic.classnumber import class_number, hp_star
from isogeny_sums.arithmetic.modular import (
    FieldElement,
    certify_prime,
    character_table,
    legendre,
    legendre_symbol,
    lift,
)
from isogeny_sums.curves.isogeny import TwoIsogenyPair, weight_center
from isogeny_sums.curves.weierstrass import affine_points, good_reduction_pair
from isogeny_sums.exceptions import (
    AEvenError,
    BadReductionError,
    KDivisibleByPError,
    NotDivisibleError,
)
from isogeny_sums.sums.models import SumReport, sum_report
from isogeny_sums.utilities.logger import get_logger, log_check

logger = get_logger("isogeny_sums")

# Below this many terms a Legendre prefix sum is cheaper without the table.
_SHORT_SUM = 64


def _require_good_reduction(a: int, b: int, p: int) -> None:
    certify_prime(p)
    if not good_reduction_pair(a, b, p):
        raise BadReductionError(f"(a, b) = ({a}, {b}) has bad reduction at p = {p}")


def legendre_prefix_sum(n: int, p: int, sign: int = 1) -> int:
    """Sum of (sign * x / p) for x = 1..n."""
    if n <= 0:
        return 0
    if n < _SHORT_SUM:
        return sum(legendre_symbol(sign * x, p) for x in range(1, n + 1))
    chars = character_table(p)
    return sum(chars[sign * x % p] for x in range(1, n + 1))


def delta(k: int, p: int) -> int:
    """
    delta_k = (1 + (k/p)) / 2.

    :param k: Integer not divisible by p
    :param p: Prime
    :return: 1 if k is a square mod p, else 0
    """
    certify_prime(p)
    if k % p == 0:
        raise KDivisibleByPError(f"p = {p} divides k = {k}")
    return (1 + legendre_symbol(k, p)) // 2


def dirichlet_sum(p: int) -> int:
    certify_prime(p)
    chars = character_table(p)
    return sum(x * chars[x] for x in range(1, p))


def dirichlet_hstar(p: int) -> int:
    """
    -(1/p) sum_{x=1}^{p-1} x (x/p), which is h_p for p = 3 mod 4 and 0 otherwise.

    :raises NotDivisibleError: if p does not divide the sum
    """
    total = dirichlet_sum(p)
    if total % p:
        raise NotDivisibleError(f"Dirichlet sum {total} not divisible by p = {p}")
    return -total // p


def dirichlet_report(p: int) -> SumReport:
    return sum_report(p, dirichlet_sum(p), hp_star(p), 0, kind="dirichlet")


def quad_lemma_sum(k: int, p: int) -> int:
    """
    sum_{u=1}^{p-1} u ((u^2 + k)/p), expected to equal -p delta_k.

    :param k: Integer not divisible by p
    :param p: Prime
    :return: The directly evaluated sum
    """
    expected = -p * delta(k, p)
    chars = character_table(p)
    total = sum(u * chars[(u * u + k) % p] for u in range(1, p))
    log_check(logger, "quadratic lemma", total == expected, p=p, k=k)
    return total


def lemma_report(p: int) -> SumReport:
    """Quadratic lemma summed over k = 1..p-1; the quotient counts the square k."""
    total = sum(quad_lemma_sum(k, p) for k in range(1, p))
    squares = sum(delta(k, p) for k in range(1, p))
    return sum_report(p, total, None, squares, kind="lemma")


def weight_shift_sum(a: int, b: int, p: int) -> int:
    """
    sum_{x=0}^{p-1} {x - a} (((x - a)^2 - 4b)/p), which equals -p delta_{-b}.

    The substitution u = x - a turns it into the quadratic lemma sum with k = -4b.
    """
    certify_prime(p)
    chars = character_table(p)
    total = 0
    for x in range(p):
        u = (x - a) % p
        total += u * chars[(u * u - 4 * b) % p]
    return total


def s_tau_field(iso: TwoIsogenyPair) -> int:
    """
    S_tau = sum over affine P in E2(F_p) of {x(P) - a} chi_tau(P).

    :param iso: The isogeny pair, parameters as field elements
    :return: The raw sum
    """
    p = iso.modulus
    a = iso.a.residue
    chars = character_table(p)
    r_char = legendre(iso.r)
    total = 0
    for P in affine_points(iso.E2):
        weight = (P.x - a) % p
        total += weight * (chars[P.x] if P.x else r_char)

    # the 2-torsion pair a -/+ 2 sqrt(b) sits symmetrically about the weight centre
    roots = weight_center(iso)
    if roots is not None:
        low, high = roots
        centred = lift(low - iso.a) + lift(high - iso.a) == p
        log_check(logger, "weight centre", centred, p=p, a=a)
    return total


def s_tau_hat_field(iso: TwoIsogenyPair) -> int:
    """
    S_tau_hat = sum over affine P in E1(F_p) of {x(P) + a/2} chi_tau_hat(P).
    """
    p = iso.modulus
    half_a = (iso.a / 2).residue
    chars = character_table(p)
    b_char = legendre(iso.b)
    total = 0
    for P in affine_points(iso.E1):
        weight = (P.x + half_a) % p
        total += weight * (chars[P.x] if P.x else b_char)
    return total


def error_R_field(a: FieldElement, b: FieldElement) -> int:
    """R_{a,b} = delta_{-b} - sum_{x=1}^{{a}-1} (x/p) for field-element parameters."""
    p = a.modulus
    return delta(-b.residue, p) - legendre_prefix_sum(lift(a) - 1, p)


def error_R_hat_field(a: FieldElement, b: FieldElement) -> int:
    """R_hat_{a,b} = delta_{-r} + sum_{x=1}^{eta} (-x/p), eta = {a/2}."""
    p = a.modulus
    r = a * a - 4 * b
    eta = lift(a / 2)
    return delta(-r.residue, p) + legendre_prefix_sum(eta, p, sign=-1)


def error_R(a: int, b: int, p: int) -> int:
    """
    R_{a,b}(p), the exact defect between -S_tau/p and h_p*.

    :param a: Integer parameter
    :param b: Integer parameter
    :param p: Prime of good reduction
    :return: delta_{-b} - sum_{x=1}^{{a}-1} (x/p)
    """
    _require_good_reduction(a, b, p)
    return error_R_field(FieldElement(a, p), FieldElement(b, p))


def error_R_hat(a: int, b: int, p: int) -> int:
    _require_good_reduction(a, b, p)
    return error_R_hat_field(FieldElement(a, p), FieldElement(b, p))


def s_tau(a: int, b: int, p: int) -> SumReport:
    """
    Evaluate S_tau at one prime and check -S_tau/p = h_p* + R_{a,b}.

    :param a: Integer parameter
    :param b: Integer parameter
    :param p: Prime of good reduction
    :return: The verification record
    """
    _require_good_reduction(a, b, p)
    report = pair_report(TwoIsogenyPair.from_integers(a, b, p))
    report.a, report.b = a, b
    log_check(logger, "main identity", report.ok, p=p, a=a, b=b)
    return report


def s_tau_hat(a: int, b: int, p: int) -> SumReport:
    """Evaluate S_tau_hat at one prime and check -S_tau_hat/p = h_p* + R_hat_{a,b}."""
    _require_good_reduction(a, b, p)
    report = pair_report(TwoIsogenyPair.from_integers(a, b, p), dual=True)
    report.a, report.b = a, b
    log_check(logger, "dual identity", report.ok, p=p, a=a, b=b)
    return report


def pair_report(iso: TwoIsogenyPair, dual: bool = False) -> SumReport:
    """SumReport for field-element parameters; a and b are reported as lifts."""
    p = iso.modulus
    if dual:
        S = s_tau_hat_field(iso)
        error = error_R_hat_field(iso.a, iso.b)
    else:
        S = s_tau_field(iso)
        error = error_R_field(iso.a, iso.b)
    return sum_report(
        p,
        S,
        hp_star(p),
        error,
        lift(iso.a),
        lift(iso.b),
        kind="dual" if dual else "main",
    )


def rho_hat(a: int, b: int, p: int) -> int:
    """
    rho_hat_{a,b} = delta_{-r} + sum_{x=1}^{(a+1)/2} ((-(p-1)/2 - x)/p).

    :param a: Odd positive integer with 2a < p
    :param b: Integer parameter
    :param p: Prime of good reduction
    :return: The exact value
    """
    if a <= 0 or a % 2 == 0:
        raise AEvenError(f"rho_hat needs a positive odd a, got {a}")
    if p <= 2 * a:
        raise AEvenError(f"rho_hat needs p > 2a, got p = {p}, a = {a}")
    _require_good_reduction(a, b, p)
    half = (p - 1) // 2
    terms = sum(legendre_symbol(-half - x, p) for x in range(1, (a + 1) // 2 + 1))
    return delta(-(a * a - 4 * b), p) + terms


def rho_hat_correction(p: int) -> int:
    """-S_tau_hat/p - rho_hat: -2 h_p when p = 3 mod 8, else 0."""
    return -2 * class_number(p) if p % 8 == 3 else 0


def half_interval_sum(p: int) -> int:
    """
    sum_{x=1}^{(p-1)/2} (-x/p).

    Checked against 0 for p = 1, 5 mod 8, -3 h_p for p = 3 mod 8 and
    -h_p for p = 7 mod 8.
    """
    certify_prime(p)
    total = legendre_prefix_sum((p - 1) // 2, p, sign=-1)
    if p % 8 == 3:
        expected = -3 * class_number(p)
    elif p % 8 == 7:
        expected = -class_number(p)
    else:
        expected = 0
    log_check(logger, "half-interval identity", total == expected, p=p)
    return total


def error_bound(a: int) -> int:
    """Uniform bound on |R_{a,b}(p)| over primes p > |a|."""
    if a > 0:
        return a
    if a == 0:
        return 1
    return abs(a) + 2


def dual_error_bound(a: int) -> int:
    """Bound on |R_hat_{a,b}(p)| for even a > 0 and p > a."""
    if a <= 0 or a % 2:
        raise ValueError(f"dual bound is stated for even a > 0, got {a}")
    return a // 2 + 1
