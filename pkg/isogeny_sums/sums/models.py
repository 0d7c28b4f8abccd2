from dataclasses import asdict, dataclass, field, fields
from typing import Any

TSV_COLUMNS = (
    "p",
    "a",
    "b",
    "S",
    "quotient",
    "hstar",
    "error",
    "divisible",
    "identity",
)


def _cell(value: Any) -> str:
    if value is None:
        return "NA"
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


@dataclass
class SumReport:
    """One prime's verification record for a weighted character sum."""

    p: int
    S: int
    quotient: int | None
    hstar: int | None
    error: int | None
    a: int | None = None
    b: int | None = None
    kind: str = "main"

    @property
    def divisible(self) -> bool:
        return self.S % self.p == 0

    @property
    def identity_holds(self) -> bool:
        if self.quotient is None:
            return False
        expected = (self.hstar or 0) + (self.error or 0)
        return self.quotient == expected

    @property
    def ok(self) -> bool:
        return self.divisible and self.identity_holds

    def tsv_row(self) -> list[str]:
        values = {
            **asdict(self),
            "divisible": self.divisible,
            "identity": self.identity_holds,
        }
        return [_cell(values[column]) for column in TSV_COLUMNS]

    def to_dict(self) -> dict[str, Any]:
        return {
            **asdict(self),
            "divisible": self.divisible,
            "identity_holds": self.identity_holds,
        }

    def __repr__(self) -> str:
        status = "ok" if self.ok else "FAILED"
        return (
            f"SumReport({self.kind}, p={self.p}, a={self.a}, b={self.b}, "
            f"S={self.S}, quotient={self.quotient}, {status})"
        )

    @classmethod
    def from_dict(cls, report: dict) -> "SumReport":
        field_names = {f.name for f in fields(cls)}
        filtered = {key: value for key, value in report.items() if key in field_names}
        return cls(**filtered)


def sum_report(
    p: int,
    S: int,
    hstar: int | None,
    error: int | None,
    a: int | None = None,
    b: int | None = None,
    kind: str = "main",
) -> SumReport:
    """Build a SumReport with quotient -S/p, or None when p does not divide S."""
    quotient = -S // p if S % p == 0 else None
    return SumReport(p, S, quotient, hstar, error, a, b, kind)


@dataclass
class CmSumReport(SumReport):
    """SumReport for a CM endomorphism, with the unshifted weighting kept alongside."""

    case: int = 0
    surd: int = 0
    xi: int = 0
    S_unshifted: int = 0

    @property
    def unshifted_divisible(self) -> bool:
        return self.S_unshifted % self.p == 0

    @property
    def unshifted_identity_holds(self) -> bool:
        if not self.unshifted_divisible:
            return False
        return -self.S_unshifted // self.p == (self.hstar or 0) + (self.error or 0)

    def to_dict(self) -> dict[str, Any]:
        return {
            **super().to_dict(),
            "unshifted_divisible": self.unshifted_divisible,
            "unshifted_identity_holds": self.unshifted_identity_holds,
        }


@dataclass
class VanishingReport:
    """Congruence classes of primes on which R_{a,b} vanishes."""

    a: int
    b: int
    modulus: int
    residues: list[int]
    witnesses: list[int]
    exhaustive_below: int
    working_modulus: int = 0
    small_primes: dict[int, int] = field(default_factory=dict)
    bad_primes: list[int] = field(default_factory=list)
    unresolved: list[int] = field(default_factory=list)
    periodicity_failures: list[int] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.periodicity_failures

    def describe(self) -> str:
        residues = " ".join(str(r) for r in self.residues) or "none"
        return f"mod {self.modulus}: {residues}"

    def to_dict(self) -> dict[str, Any]:
        return {**asdict(self), "ok": self.ok}

    def __repr__(self) -> str:
        return f"VanishingReport(a={self.a}, b={self.b}, {self.describe()})"
