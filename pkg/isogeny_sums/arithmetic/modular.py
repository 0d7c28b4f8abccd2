from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import NewType

from sympy import isprime, primerange
from sympy.functions.combinatorial.numbers import jacobi_symbol
from sympy.ntheory import sqrt_mod as _sympy_sqrt_mod

from isogeny_sums.exceptions import NotPrimeError

Prime = NewType("Prime", int)

MAX_PRIME = 1 << 62
TABLE_LIMIT = 4_000_000


@lru_cache(maxsize=64)
def _is_prime(value: int) -> bool:
    return bool(isprime(value))


def certify_prime(value: int) -> Prime:
    """
    Check that value is a prime with 3 < value < 2^62.

    sympy's isprime is deterministic below 2^64.

    :param value: Candidate modulus
    :return: The same value, typed as Prime
    """
    if not isinstance(value, int) or isinstance(value, bool):
        raise NotPrimeError(f"modulus must be an int, got {type(value).__name__}")
    if value <= 3 or value >= MAX_PRIME:
        raise NotPrimeError(f"modulus {value} outside the supported range (3, 2^62)")
    if not _is_prime(value):
        raise NotPrimeError(f"{value} is not prime")
    return Prime(value)


@dataclass(frozen=True, slots=True)
class FieldElement:
    """Residue in [0, p) together with its prime modulus."""

    residue: int
    modulus: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "residue", self.residue % self.modulus)

    def _coerce(self, other: "FieldElement | int") -> int:
        if isinstance(other, FieldElement):
            if other.modulus != self.modulus:
                raise ValueError(
                    f"moduli differ: {self.modulus} and {other.modulus}"
                )
            return other.residue
        if isinstance(other, int):
            return other
        raise TypeError(f"cannot combine FieldElement with {type(other).__name__}")

    def _new(self, value: int) -> "FieldElement":
        return FieldElement(value, self.modulus)

    def __add__(self, other: "FieldElement | int") -> "FieldElement":
        return self._new(self.residue + self._coerce(other))

    __radd__ = __add__

    def __sub__(self, other: "FieldElement | int") -> "FieldElement":
        return self._new(self.residue - self._coerce(other))

    def __rsub__(self, other: int) -> "FieldElement":
        return self._new(other - self.residue)

    def __mul__(self, other: "FieldElement | int") -> "FieldElement":
        return self._new(self.residue * self._coerce(other))

    __rmul__ = __mul__

    def __neg__(self) -> "FieldElement":
        return self._new(-self.residue)

    def inv(self) -> "FieldElement":
        if self.residue == 0:
            raise ZeroDivisionError(f"0 has no inverse mod {self.modulus}")
        return self._new(pow(self.residue, -1, self.modulus))

    def __truediv__(self, other: "FieldElement | int") -> "FieldElement":
        return self * self._new(self._coerce(other)).inv()

    def __rtruediv__(self, other: int) -> "FieldElement":
        return self._new(other) * self.inv()

    def __pow__(self, exponent: int) -> "FieldElement":
        if exponent < 0:
            return self.inv() ** (-exponent)
        return self._new(pow(self.residue, exponent, self.modulus))

    def __int__(self) -> int:
        return self.residue

    def __bool__(self) -> bool:
        return self.residue != 0

    def __repr__(self) -> str:
        return f"{self.residue} (mod {self.modulus})"


def lift(a: FieldElement | int, p: int | None = None) -> int:
    """
    Canonical integer representative in [0, p).

    :param a: Field element, or an integer to be reduced mod p
    :param p: Modulus, required when a is an integer
    :return: The representative
    """
    if isinstance(a, FieldElement):
        return a.residue
    if p is None:
        raise ValueError("lift of an integer needs the modulus")
    return a % p


def to_field(value: FieldElement | int | Fraction, p: int) -> FieldElement:
    """
    Reduce an integer or a rational number into F_p.

    :param value: int, Fraction with denominator prime to p, or FieldElement
    :param p: The prime modulus
    :return: The corresponding FieldElement
    """
    if isinstance(value, FieldElement):
        if value.modulus != p:
            raise ValueError(f"element lives mod {value.modulus}, not mod {p}")
        return value
    if isinstance(value, Fraction):
        return FieldElement(value.numerator, p) / FieldElement(value.denominator, p)
    return FieldElement(value, p)


def legendre_euler(n: int, p: int) -> int:
    """Legendre symbol by Euler's criterion."""
    value = pow(n % p, (p - 1) // 2, p)
    return -1 if value == p - 1 else value


def legendre_reciprocity(n: int, p: int) -> int:
    """Legendre symbol by the Jacobi reciprocity descent."""
    return int(jacobi_symbol(n % p, p))


def legendre_symbol(n: int, p: int) -> int:
    """
    Legendre symbol (n/p) of an integer.

    :param n: Any integer
    :param p: Odd prime
    :return: -1, 0 or +1
    """
    return legendre_euler(n, p)


def legendre(a: FieldElement) -> int:
    return legendre_symbol(a.residue, a.modulus)


# Tables are O(p); keep only the primes of the current sweep step.
@lru_cache(maxsize=2)
def root_table(p: int) -> tuple[int, ...]:
    """
    Canonical square roots of every residue mod p.

    Entry n is the root y <= (p - 1)/2 with y^2 = n, or -1 when n is not a square.
    """
    if p > TABLE_LIMIT:
        raise ValueError(f"p = {p} is above the table limit {TABLE_LIMIT}")
    table = [-1] * p
    for y in range((p + 1) // 2):
        table[y * y % p] = y
    return tuple(table)


@lru_cache(maxsize=2)
def character_table(p: int) -> tuple[int, ...]:
    """Quadratic character of every residue mod p, indexed by the residue."""
    chars = [1 if root >= 0 else -1 for root in root_table(p)]
    chars[0] = 0
    return tuple(chars)


def sqrt_residue(n: int, p: int) -> int | None:
    """
    Smaller of the two square roots of n mod p, or None for a non-residue.

    :param n: Any integer
    :param p: Odd prime
    :return: Root in [0, (p - 1)/2], or None
    """
    n %= p
    if p <= TABLE_LIMIT:
        root = root_table(p)[n]
        return root if root >= 0 else None
    if n == 0:
        return 0
    roots = _sympy_sqrt_mod(n, p, all_roots=True)
    return min(roots) if roots else None


def sqrt_mod(a: FieldElement) -> FieldElement | None:
    root = sqrt_residue(a.residue, a.modulus)
    return None if root is None else FieldElement(root, a.modulus)


def primes_between(lo: int, hi: int) -> list[Prime]:
    """Primes in [lo, hi], ascending."""
    return [Prime(int(q)) for q in primerange(lo, hi + 1)]
