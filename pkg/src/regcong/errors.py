"""Exception types shared across the package."""


class RegcongError(Exception):
    """Base class for all package-specific errors."""


class ModulusMismatch(RegcongError):
    """Binary operation on series with different moduli."""


class NonUnitConstantTerm(RegcongError):
    """Series inversion requires constant term equal to 1."""


class NonzeroTruncatedHead(RegcongError):
    """unshift would silently drop nonzero leading coefficients."""


class ZeroInverse(RegcongError):
    """Multiplicative inverse of a residue divisible by the modulus."""


class HalfIntegralWeight(RegcongError):
    """Eta-quotient exponent sum is odd, so the weight is not an integer."""


class NotAdmissible(RegcongError):
    """Eta-quotient fails the integrality conditions for level N."""


class ParseError(RegcongError):
    """Malformed input text; `position` is the zero-based offset of the fault."""

    def __init__(self, message: str, position: int = 0):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class LengthOverflow(RegcongError):
    """Requested series length exceeds the configured coefficient cap."""

    def __init__(self, needed: int, cap: int, what: str = "series"):
        super().__init__(
            f"{what} needs {needed} coefficients but the cap is {cap}; "
            f"raise the memory cap (--memory-cap / --huge) to proceed"
        )
        self.needed = needed
        self.cap = cap


class PrecisionOverflow(LengthOverflow):
    """Verification would need more coefficients than the cap allows."""


class InsufficientPrecision(RegcongError):
    """Series is too short for the requested operator."""


class NotOneMod12(RegcongError):
    """The mod-3 congruence family is only defined for primes p = 1 (mod 12)."""
