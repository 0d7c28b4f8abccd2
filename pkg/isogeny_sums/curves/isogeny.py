from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from typing import Iterator

from isogeny_sums.arithmetic.modular import (
    FieldElement,
    certify_prime,
    legendre,
    legendre_symbol,
    sqrt_mod,
)
from isogeny_sums.curves.weierstrass import (
    INFINITY,
    CubicCurve,
    CurvePoint,
    affine_points,
    enumerate_points,
    good_reduction_pair,
    negate,
)
from isogeny_sums.exceptions import BadReductionError, NoAuxiliaryPointError

KERNEL_POINT = CurvePoint(0, 0)


class Direction(str, Enum):
    FORWARD = "forward"
    DUAL = "dual"


@dataclass(frozen=True)
class TwoIsogenyPair:
    """
    The normalized pair

        E1: y^2 = x^3 + a x^2 + b x
        E2: y^2 = x^3 - 2a x^2 + r x,   r = a^2 - 4b

    with tau: E1 -> E2 killing T1 = (0, 0) and the dual killing T2 = (0, 0).
    """

    a: FieldElement
    b: FieldElement
    r: FieldElement = field(init=False, compare=False)
    E1: CubicCurve = field(init=False, compare=False, repr=False)
    E2: CubicCurve = field(init=False, compare=False, repr=False)

    def __post_init__(self) -> None:
        if self.a.modulus != self.b.modulus:
            raise ValueError("a and b must live over the same prime")
        certify_prime(self.modulus)
        r = self.a * self.a - 4 * self.b
        if not self.b or not r:
            raise BadReductionError(
                f"bad reduction at p = {self.modulus}: b = {self.b}, r = {r}"
            )
        zero = FieldElement(0, self.modulus)
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "E1", CubicCurve(self.a, self.b, zero))
        object.__setattr__(self, "E2", CubicCurve(-2 * self.a, r, zero))

    @property
    def modulus(self) -> int:
        return self.a.modulus

    @property
    def T1(self) -> CurvePoint:
        return KERNEL_POINT

    @property
    def T2(self) -> CurvePoint:
        return KERNEL_POINT

    @classmethod
    def from_integers(cls, a: int, b: int, p: int) -> "TwoIsogenyPair":
        certify_prime(p)
        if not good_reduction_pair(a, b, p):
            raise BadReductionError(f"(a, b) = ({a}, {b}) has bad reduction at {p}")
        return cls(FieldElement(a, p), FieldElement(b, p))


def two_isogeny_pair(a: FieldElement, b: FieldElement) -> TwoIsogenyPair:
    return TwoIsogenyPair(a, b)


def apply_tau(iso: TwoIsogenyPair, P: CurvePoint) -> CurvePoint:
    """
    tau(x, y) = (y^2/x^2, y(b - x^2)/x^2).

    :param iso: The isogeny pair
    :param P: Point of E1(F_p)
    :return: Image on E2, infinity on the kernel {inf, T1}
    """
    iso.E1.require(P)
    if P.is_infinity or P.x == 0:
        return INFINITY
    p = iso.modulus
    x, y = P.x, P.y
    inv_x2 = pow(x * x, -1, p)
    return iso.E2.point(
        y * y * inv_x2,
        y * (iso.b.residue - x * x) * inv_x2,
    )


def apply_tau_hat(iso: TwoIsogenyPair, P: CurvePoint) -> CurvePoint:
    """
    tau_hat(x, y) = (y^2/4x^2, y(r - x^2)/8x^2).

    :param iso: The isogeny pair
    :param P: Point of E2(F_p)
    :return: Image on E1, infinity on the kernel {inf, T2}
    """
    iso.E2.require(P)
    if P.is_infinity or P.x == 0:
        return INFINITY
    p = iso.modulus
    x, y = P.x, P.y
    inv_x2 = pow(x * x, -1, p)
    return iso.E1.point(
        y * y * inv_x2 * pow(4, -1, p),
        y * (iso.r.residue - x * x) * inv_x2 * pow(8, -1, p),
    )


def chi_tau(iso: TwoIsogenyPair, P: CurvePoint) -> int:
    """+1 at infinity, (r/p) at T2, (x/p) elsewhere on E2."""
    iso.E2.require(P)
    if P.is_infinity:
        return 1
    if P.x == 0:
        return legendre(iso.r)
    return legendre_symbol(P.x, iso.modulus)


def chi_tau_hat(iso: TwoIsogenyPair, P: CurvePoint) -> int:
    """+1 at infinity, (b/p) at T1, (x/p) elsewhere on E1."""
    iso.E1.require(P)
    if P.is_infinity:
        return 1
    if P.x == 0:
        return legendre(iso.b)
    return legendre_symbol(P.x, iso.modulus)


@lru_cache(maxsize=64)
def tau_image(iso: TwoIsogenyPair) -> frozenset[CurvePoint]:
    return frozenset(apply_tau(iso, P) for P in enumerate_points(iso.E1))


@lru_cache(maxsize=64)
def tau_hat_image(iso: TwoIsogenyPair) -> frozenset[CurvePoint]:
    return frozenset(apply_tau_hat(iso, P) for P in enumerate_points(iso.E2))


def image_oracle(iso: TwoIsogenyPair, direction: Direction, P: CurvePoint) -> int:
    """
    Ground-truth cokernel character: +1 iff P is hit by the isogeny.

    :param iso: The isogeny pair
    :param direction: FORWARD for tau (P on E2), DUAL for tau_hat (P on E1)
    :param P: Point on the codomain of the chosen direction
    :return: +1 or -1
    """
    if Direction(direction) is Direction.FORWARD:
        iso.E2.require(P)
        image = tau_image(iso)
    else:
        iso.E1.require(P)
        image = tau_hat_image(iso)
    return 1 if P in image else -1


@dataclass(frozen=True)
class PairingFunctions:
    """f = x and g = y/x for tau; f_hat = x and g_hat = y/(2x) for tau_hat."""

    iso: TwoIsogenyPair

    def f(self, P: CurvePoint) -> int:
        return P.x

    def g(self, P: CurvePoint) -> int:
        return P.y * pow(P.x, -1, self.iso.modulus) % self.iso.modulus

    def f_hat(self, P: CurvePoint) -> int:
        return P.x

    def g_hat(self, P: CurvePoint) -> int:
        p = self.iso.modulus
        return P.y * pow(2 * P.x, -1, p) % p

    def factors_through(self) -> bool:
        """f(tau(P)) = g(P)^2 on E1 and f_hat(tau_hat(Q)) = g_hat(Q)^2 on E2."""
        p = self.iso.modulus
        for P in affine_points(self.iso.E1):
            if P.x and self.f(apply_tau(self.iso, P)) != self.g(P) ** 2 % p:
                return False
        for Q in affine_points(self.iso.E2):
            image = apply_tau_hat(self.iso, Q)
            if Q.x and self.f_hat(image) != self.g_hat(Q) ** 2 % p:
                return False
        return True


def _auxiliary_points(curve: CubicCurve, S: CurvePoint) -> Iterator[CurvePoint]:
    minus_S = negate(S, curve.modulus)
    for Q in affine_points(curve):
        if Q.x != 0 and Q != S and Q != minus_S:
            yield Q


def _chord_add(curve: CubicCurve, P: CurvePoint, Q: CurvePoint) -> CurvePoint:
    if P.is_infinity:
        return Q
    if Q.is_infinity:
        return P
    if P.x == Q.x:
        raise ValueError("chord addition needs distinct x-coordinates")
    p = curve.modulus
    slope = (Q.y - P.y) * pow(Q.x - P.x, -1, p)
    x3 = (slope * slope - curve.c2.residue - P.x - Q.x) % p
    return curve.point(x3, slope * (P.x - x3) - P.y)


def _pairing_with_x(curve: CubicCurve, S: CurvePoint, k: int, aux_index: int) -> int:
    curve.require(S)
    if k not in (0, 1):
        raise ValueError(f"k must be 0 or 1, got {k}")
    if k == 0:
        return 1
    p = curve.modulus
    if not S.is_infinity and S.x != 0:
        return legendre_symbol(S.x, p)

    # S sits on the support {inf, (0, 0)} of div(x): move it off by Q
    for index, Q in enumerate(_auxiliary_points(curve, S)):
        if index == aux_index:
            shifted = _chord_add(curve, S, Q)
            return legendre_symbol(shifted.x, p) * legendre_symbol(Q.x, p)
    raise NoAuxiliaryPointError(
        f"no auxiliary point #{aux_index} for {S} on {curve}"
    )


def tate_pairing_tau(
    iso: TwoIsogenyPair, S: CurvePoint, k: int, aux_index: int = 0
) -> int:
    """
    Pairing of the class of S in E2(F_p)/tau(E1(F_p)) with k T2, as a sign.

    :param iso: The isogeny pair
    :param S: Point of E2(F_p)
    :param k: 0 or 1
    :param aux_index: Which auxiliary point to shift by on the support
    :return: +1 or -1
    """
    return _pairing_with_x(iso.E2, S, k, aux_index)


def tate_pairing_tau_hat(
    iso: TwoIsogenyPair, S: CurvePoint, k: int, aux_index: int = 0
) -> int:
    """Pairing attached to tau_hat, S on E1 paired with k T1."""
    return _pairing_with_x(iso.E1, S, k, aux_index)


def normal_form_from_root(
    curve: CubicCurve, eps: FieldElement
) -> tuple[FieldElement, FieldElement]:
    """
    Normalized (a, b) for a curve with a rational root eps.

    Writing the cubic as (x - eps)(x^2 - 2 mu x + nu), the translation
    (x, y) -> (x - eps, y) carries the curve onto E2 of the pair
    (a, b) = (mu - eps, (mu^2 - nu)/4).

    :param curve: Curve whose cubic vanishes at eps
    :param eps: The root
    :return: (a, b)
    """
    curve.point(eps, 0)
    mu = (-curve.c2 - eps) / 2
    nu = curve.c1 - 2 * mu * eps
    return mu - eps, (mu * mu - nu) / 4


def weight_center(
    iso: TwoIsogenyPair,
) -> tuple[FieldElement, FieldElement] | None:
    """
    x-coordinates a -/+ 2 sqrt(b) of the 2-torsion of E2 outside ker tau_hat.

    :param iso: The isogeny pair
    :return: The two roots, or None when b is not a square
    """
    root = sqrt_mod(iso.b)
    if root is None:
        return None
    return iso.a - 2 * root, iso.a + 2 * root
