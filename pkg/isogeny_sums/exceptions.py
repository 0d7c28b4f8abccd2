class IsogenySumsError(Exception):
    """Base class for every error raised by isogeny_sums."""


class NotPrimeError(IsogenySumsError, ValueError):
    """Modulus is not a prime in the supported range (3, 2^62)."""


class SingularCurveError(IsogenySumsError, ValueError):
    """Cubic has a repeated root mod p."""


class PointNotOnCurveError(IsogenySumsError, ValueError):
    """Point does not satisfy the curve equation."""


class NoAuxiliaryPointError(IsogenySumsError, LookupError):
    """No auxiliary point is available for the pairing shift formula."""


class NotDivisibleError(IsogenySumsError, ArithmeticError):
    """A sum that must be divisible by p is not."""


class KDivisibleByPError(IsogenySumsError, ValueError):
    """delta_k and the quadratic lemma sum need p not dividing k."""


class BadReductionError(IsogenySumsError, ValueError):
    """p divides 2b(a^2 - 4b), so E1 or E2 is singular mod p."""


class AEvenError(IsogenySumsError, ValueError):
    """rho_hat needs a positive odd a."""


class SplitConditionError(IsogenySumsError, ValueError):
    """p does not split in the CM field, so the endomorphism is not F_p-rational."""


class NoWitnessPrimeError(IsogenySumsError, LookupError):
    """A residue class has no usable prime below the scan cap."""
