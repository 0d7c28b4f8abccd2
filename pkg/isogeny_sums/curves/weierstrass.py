from dataclasses import dataclass, field
from functools import lru_cache

from isogeny_sums.arithmetic.modular import FieldElement, sqrt_residue
from isogeny_sums.exceptions import PointNotOnCurveError, SingularCurveError


@dataclass(frozen=True, slots=True)
class CurvePoint:
    """Affine point (x, y) with residues in [0, p), or the point at infinity."""

    x: int | None = None
    y: int | None = None

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    def __repr__(self) -> str:
        return "inf" if self.is_infinity else f"({self.x}, {self.y})"


INFINITY = CurvePoint()


@dataclass(frozen=True)
class CubicCurve:
    """y^2 = x^3 + c2 x^2 + c1 x + c0 over F_p."""

    c2: FieldElement
    c1: FieldElement
    c0: FieldElement
    modulus: int = field(init=False)

    def __post_init__(self) -> None:
        moduli = {self.c2.modulus, self.c1.modulus, self.c0.modulus}
        if len(moduli) != 1:
            raise ValueError(f"coefficients live over different primes: {moduli}")
        object.__setattr__(self, "modulus", self.c2.modulus)
        if not discriminant(self):
            raise SingularCurveError(f"{self} is singular")

    @classmethod
    def from_coefficients(cls, c2: int, c1: int, c0: int, p: int) -> "CubicCurve":
        return cls(FieldElement(c2, p), FieldElement(c1, p), FieldElement(c0, p))

    def f(self, x: int) -> int:
        """Right-hand side at x, as a residue."""
        c2, c1, c0 = self.c2.residue, self.c1.residue, self.c0.residue
        return (((x + c2) * x + c1) * x + c0) % self.modulus

    def point(self, x: int | FieldElement, y: int | FieldElement) -> CurvePoint:
        """
        Checked constructor for an affine point.

        :raises PointNotOnCurveError: if y^2 != f(x)
        """
        P = CurvePoint(int(x) % self.modulus, int(y) % self.modulus)
        if not is_on_curve(self, P):
            raise PointNotOnCurveError(f"{P} is not on {self}")
        return P

    def require(self, P: CurvePoint) -> CurvePoint:
        if not is_on_curve(self, P):
            raise PointNotOnCurveError(f"{P} is not on {self}")
        return P

    def __repr__(self) -> str:
        c2, c1, c0 = self.c2.residue, self.c1.residue, self.c0.residue
        return f"y^2 = x^3 + {c2}x^2 + {c1}x + {c0} over F_{self.modulus}"


def discriminant(E: CubicCurve) -> FieldElement:
    """Discriminant of the monic cubic x^3 + c2 x^2 + c1 x + c0."""
    b, c, d = E.c2, E.c1, E.c0
    return 18 * b * c * d - 4 * b**3 * d + b**2 * c**2 - 4 * c**3 - 27 * d**2


def is_on_curve(E: CubicCurve, P: CurvePoint) -> bool:
    if P.is_infinity:
        return True
    p = E.modulus
    if P.y is None or not (0 <= P.x < p and 0 <= P.y < p):
        return False
    return (P.y * P.y - E.f(P.x)) % p == 0


def negate(P: CurvePoint, p: int) -> CurvePoint:
    if P.is_infinity:
        return P
    return CurvePoint(P.x, -P.y % p)


@lru_cache(maxsize=64)
def enumerate_points(E: CubicCurve) -> tuple[CurvePoint, ...]:
    """
    Every point of E(F_p), infinity first, then affine points sorted by (x, y).

    One scan over x; each x contributes zero, one or two points.

    :param E: Nonsingular curve
    :return: The points as an immutable tuple
    """
    p = E.modulus
    points = [INFINITY]
    for x in range(p):
        root = sqrt_residue(E.f(x), p)
        if root is None:
            continue
        if root == 0:
            points.append(CurvePoint(x, 0))
        else:
            points.append(CurvePoint(x, root))
            points.append(CurvePoint(x, p - root))
    return tuple(points)


def affine_points(E: CubicCurve) -> tuple[CurvePoint, ...]:
    return enumerate_points(E)[1:]


def point_count(E: CubicCurve) -> int:
    return len(enumerate_points(E))


def two_torsion(E: CubicCurve) -> list[CurvePoint]:
    """Infinity plus every (x, 0) with f(x) = 0."""
    return [INFINITY] + [
        CurvePoint(x, 0) for x in range(E.modulus) if E.f(x) == 0
    ]


def hasse_holds(E: CubicCurve) -> bool:
    """|#E(F_p) - (p + 1)| <= 2 sqrt(p), checked in integers."""
    trace = point_count(E) - E.modulus - 1
    return trace * trace <= 4 * E.modulus


def good_reduction_pair(a: int, b: int, p: int) -> bool:
    """
    Whether both y^2 = x^3 + ax^2 + bx and y^2 = x^3 - 2ax^2 + (a^2 - 4b)x
    are nonsingular mod p.
    """
    return p > 3 and (2 * b * (a * a - 4 * b)) % p != 0
