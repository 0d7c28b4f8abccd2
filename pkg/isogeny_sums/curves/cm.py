"""
Degree-2 CM endomorphisms of y^2 = x^3 + x, y^2 = (x+2)(x^2-2) and
y^2 = (x+7)(x^2-7x+14), and their translation onto the normalized pair.
"""

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache

from isogeny_sums.arithmetic.classnumber import hp_star
from isogeny_sums.arithmetic.modular import (
    FieldElement,
    certify_prime,
    legendre_symbol,
    lift,
    sqrt_residue,
    to_field,
)
from isogeny_sums.curves.isogeny import (
    TwoIsogenyPair,
    chi_tau,
    normal_form_from_root,
    two_isogeny_pair,
)
from isogeny_sums.curves.weierstrass import (
    INFINITY,
    CubicCurve,
    CurvePoint,
    affine_points,
    enumerate_points,
    two_torsion,
)
from isogeny_sums.exceptions import SplitConditionError
from isogeny_sums.sums.charsums import error_R_field, s_tau_field
from isogeny_sums.sums.models import CmSumReport
from isogeny_sums.utilities.logger import get_logger, log_check

logger = get_logger("isogeny_sums")


class CmCase(int, Enum):
    """CM discriminant of the curve; the value is the square root's argument."""

    MINUS1 = -1
    MINUS2 = -2
    MINUS7 = -7

    @property
    def coefficients(self) -> tuple[int, int, int]:
        """(c2, c1, c0) of the integral model."""
        return {
            CmCase.MINUS1: (0, 1, 0),
            CmCase.MINUS2: (2, -2, -4),
            CmCase.MINUS7: (0, -35, 98),
        }[self]

    def curve(self, p: int) -> CubicCurve:
        return CubicCurve.from_coefficients(*self.coefficients, p)

    def splits(self, p: int) -> bool:
        return p > 3 and legendre_symbol(self.value, p) == 1

    def surd(self, p: int) -> int:
        """Canonical square root of the discriminant mod p."""
        self.require_split(p)
        root = sqrt_residue(self.value, p)
        if root is None:
            raise SplitConditionError(f"{self.value} has no square root mod {p}")
        return root

    def require_split(self, p: int) -> None:
        certify_prime(p)
        if not self.splits(p):
            raise SplitConditionError(
                f"p = {p} does not split in Q(sqrt({self.value}))"
            )


@dataclass(frozen=True)
class CoordChange:
    """
    Translation alpha_2(x, y) = (x - eps, y) from the CM curve onto E2 of the
    normalized pair (a, b), and the weight shift xi = eps + a.
    """

    case: CmCase
    surd: int
    eps: FieldElement
    a: FieldElement
    b: FieldElement

    @property
    def modulus(self) -> int:
        return self.eps.modulus

    @property
    def xi(self) -> FieldElement:
        return self.eps + self.a

    def pair(self) -> TwoIsogenyPair:
        return two_isogeny_pair(self.a, self.b)

    def alpha2(self, P: CurvePoint) -> CurvePoint:
        if P.is_infinity:
            return P
        return CurvePoint((P.x - self.eps.residue) % self.modulus, P.y)


def _resolve_surd(case: CmCase, p: int, surd: int | None) -> int:
    if surd is None:
        return case.surd(p)
    case.require_split(p)
    if (surd * surd - case.value) % p:
        raise ValueError(f"{surd} is not a square root of {case.value} mod {p}")
    return surd % p


def cm_endomorphism_apply(
    case: CmCase, p: int, P: CurvePoint, surd: int | None = None
) -> CurvePoint:
    """
    Evaluate the degree-2 endomorphism of the case at P.

    :param case: Which CM curve
    :param p: Split prime
    :param P: Point of E(F_p)
    :param surd: Square root of the discriminant, the canonical one by default
    :return: phi(P), infinity on the kernel
    """
    s = _resolve_surd(case, p, surd)
    E = case.curve(p)
    E.require(P)
    if P.is_infinity:
        return INFINITY
    x, y = P.x, P.y

    if case is CmCase.MINUS1:
        if x == 0:
            return INFINITY
        X = (x * x + 1) * pow(2 * s * x, -1, p)
        Y = y * (x * x - 1) * pow((2 * s - 2) * x * x, -1, p)
    elif case is CmCase.MINUS2:
        t = (x + 2) % p
        if t == 0:
            return INFINITY
        X = (t * t + 2) * pow(-2 * t, -1, p)
        Y = y * (t * t - 2) * pow(2 * s * t * t, -1, p)
    else:
        beta = (1 + s) * pow(2, -1, p) % p
        d = (x + beta * beta - 2) % p
        if d == 0:
            return INFINITY
        inv_d = pow(d, -1, p)
        X = pow(beta, -2, p) * (x - 7 * (1 - pow(beta, 4, p)) * inv_d)
        Y = pow(beta, -3, p) * y * (1 + 7 * pow(1 - beta, 4, p) * inv_d * inv_d)
    return E.point(X, Y)


@lru_cache(maxsize=64)
def cm_image(case: CmCase, p: int, surd: int | None = None) -> frozenset[CurvePoint]:
    """phi(E(F_p)) by pushing every point forward."""
    return frozenset(
        cm_endomorphism_apply(case, p, P, surd) for P in enumerate_points(case.curve(p))
    )


def chi_phi(case: CmCase, p: int, P: CurvePoint, surd: int | None = None) -> int:
    return 1 if P in cm_image(case, p, surd) else -1


def closed_form_parameters(
    case: CmCase, p: int, surd: int
) -> tuple[FieldElement, FieldElement, FieldElement]:
    """
    (eps, a, b) from the displayed formulas.

    For -7 they are written in beta_bar = 1 - beta, beta = (1 + surd)/2, and
    eps = 3 + beta.
    """
    if case is CmCase.MINUS1:
        return to_field(0, p), to_field(0, p), to_field(Fraction(-1, 4), p)
    if case is CmCase.MINUS2:
        return to_field(-2, p), to_field(2, p), to_field(Fraction(1, 2), p)
    beta = (1 + FieldElement(surd, p)) / 2
    beta_bar = 1 - beta
    a = to_field(Fraction(3, 2), p) * (beta_bar - 4)
    b = to_field(Fraction(7, 16), p) * (3 * beta_bar + 14)
    return 3 + beta, a, b


def _dual_kernel_root(case: CmCase, p: int, surd: int) -> FieldElement:
    """
    x-coordinate of the generator of ker phi_hat.

    phi maps any rational 2-torsion point outside ker phi onto it; when
    ker phi holds the only rational 2-torsion point, that point is it.
    """
    torsion = [T for T in two_torsion(case.curve(p)) if not T.is_infinity]
    for T in torsion:
        image = cm_endomorphism_apply(case, p, T, surd)
        if not image.is_infinity:
            return FieldElement(image.x, p)
    if len(torsion) != 1:
        raise ValueError(f"no dual kernel found for {case.name} at p = {p}")
    return FieldElement(torsion[0].x, p)


def cm_coord_change(case: CmCase, p: int, surd: int | None = None) -> CoordChange:
    """
    Coordinate change onto the normalized pair, derived from ker phi_hat.

    :param case: Which CM curve
    :param p: Split prime
    :param surd: Square root of the discriminant, the canonical one by default
    :return: eps, a, b with the displayed closed forms checked against them
    """
    s = _resolve_surd(case, p, surd)
    eps = _dual_kernel_root(case, p, s)
    a, b = normal_form_from_root(case.curve(p), eps)
    log_check(
        logger,
        "CM closed-form parameters",
        closed_form_parameters(case, p, s) == (eps, a, b),
        case=case.name,
        p=p,
        surd=s,
    )
    return CoordChange(case, s, eps, a, b)


def cm_weighted_sum(case: CmCase, p: int, surd: int | None = None) -> CmSumReport:
    """
    S_phi weighted by {x(P) - xi}, xi = eps + a, and the unshifted weighting {x(P)}.

    :param case: Which CM curve
    :param p: Split prime
    :param surd: Square root of the discriminant, the canonical one by default
    :return: Report checked against h_p* + R_{a,b}
    """
    coord = cm_coord_change(case, p, surd)
    xi = coord.xi.residue
    image = cm_image(case, p, coord.surd)
    shifted = unshifted = 0
    for P in affine_points(case.curve(p)):
        sign = 1 if P in image else -1
        shifted += (P.x - xi) % p * sign
        unshifted += P.x * sign

    hstar = hp_star(p)
    error = error_R_field(coord.a, coord.b)
    quotient = -shifted // p if shifted % p == 0 else None
    report = CmSumReport(
        p=p,
        S=shifted,
        quotient=quotient,
        hstar=hstar,
        error=error,
        a=lift(coord.a),
        b=lift(coord.b),
        kind="cm",
        case=case.value,
        surd=coord.surd,
        xi=xi,
        S_unshifted=unshifted,
    )
    log_check(logger, "CM identity", report.ok, case=case.name, p=p)
    return report


def translate_equivalence_check(
    case: CmCase, p: int, surd: int | None = None
) -> bool:
    """
    chi_phi(P) = chi_tau(alpha_2(P)) at every point and S_phi = S_tau.

    :param case: Which CM curve
    :param p: Split prime
    :param surd: Square root of the discriminant, the canonical one by default
    :return: Whether both checks pass
    """
    coord = cm_coord_change(case, p, surd)
    iso = coord.pair()
    pointwise = all(
        chi_phi(case, p, P, coord.surd) == chi_tau(iso, iso.E2.require(coord.alpha2(P)))
        for P in enumerate_points(case.curve(p))
    )
    sums = cm_weighted_sum(case, p, coord.surd).S == s_tau_field(iso)
    log_check(logger, "chi_phi = chi_tau after translation", pointwise, p=p)
    log_check(logger, "S_phi = S_tau", sums, case=case.name, p=p)
    return pointwise and sums


def surd_sign_agreement(case: CmCase, p: int) -> bool:
    """Whether both square roots of the discriminant give the same chi_phi."""
    s = case.surd(p)
    return cm_image(case, p, s) == cm_image(case, p, (-s) % p)
