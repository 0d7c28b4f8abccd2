from dataclasses import dataclass
from functools import lru_cache
from math import gcd, isqrt

from isogeny_sums.arithmetic.modular import certify_prime


@dataclass(frozen=True)
class QuadForm:
    """Positive definite binary quadratic form A x^2 + B xy + C y^2."""

    A: int
    B: int
    C: int

    @property
    def discriminant(self) -> int:
        return self.B * self.B - 4 * self.A * self.C

    def is_reduced(self) -> bool:
        if not abs(self.B) <= self.A <= self.C:
            return False
        if (abs(self.B) == self.A or self.A == self.C) and self.B < 0:
            return False
        return True

    def is_primitive(self) -> bool:
        return gcd(gcd(self.A, self.B), self.C) == 1

    def __repr__(self) -> str:
        return f"({self.A}, {self.B}, {self.C})"


def field_discriminant(p: int) -> int:
    """Discriminant of the ring of integers of Q(sqrt(-p)): -p or -4p."""
    return -p if p % 4 == 3 else -4 * p


def reduced_forms(D: int) -> list[QuadForm]:
    """
    All reduced primitive forms of discriminant D < 0.

    A reduced form has 3A^2 <= |D|, so A is scanned up to isqrt(|D|/3).

    :param D: Negative discriminant, D = 0 or 1 mod 4
    :return: Forms sorted by (A, B)
    """
    if D >= 0 or D % 4 not in (0, 1):
        raise ValueError(f"{D} is not a negative discriminant")
    forms = []
    for A in range(1, isqrt(-D // 3) + 1):
        for B in range(-A, A + 1):
            if (B - D) % 2:
                continue
            numerator = B * B - D
            if numerator % (4 * A):
                continue
            form = QuadForm(A, B, numerator // (4 * A))
            if form.is_reduced() and form.is_primitive():
                forms.append(form)
    return forms


@lru_cache(maxsize=4096)
def class_number(p: int) -> int:
    """
    Class number h_p of Q(sqrt(-p)) by counting reduced forms.

    :param p: Prime > 3
    :return: h_p
    """
    certify_prime(p)
    return len(reduced_forms(field_discriminant(p)))


def hp_star(p: int) -> int:
    """h_p for p = 3 mod 4, and 0 for p = 1 mod 4."""
    certify_prime(p)
    return class_number(p) if p % 4 == 3 else 0
