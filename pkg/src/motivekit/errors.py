"""Exception hierarchy.  Every error carries a stable ``code`` used by the CLI."""

from __future__ import annotations


class MotiveKitError(Exception):
    code = "error"


class NotDivisible(MotiveKitError):
    code = "not-divisible"


class CapExceeded(MotiveKitError):
    code = "cap-exceeded"


class IllegalType(MotiveKitError):
    code = "illegal-type"


class IllegalTwist(MotiveKitError):
    code = "illegal-twist"


class PsiNotStable(MotiveKitError):
    code = "psi-not-stable"


class InvalidGroup(MotiveKitError):
    code = "invalid-group"


class MixedPrimeUnsupported(InvalidGroup):
    code = "mixed-prime-unsupported"


class NotATorsionPrime(MotiveKitError):
    code = "not-a-torsion-prime"


class UnknownRow(MotiveKitError):
    code = "unknown-row"


class Inadmissible(MotiveKitError):
    code = "inadmissible"


class IllegalAlgebra(MotiveKitError):
    code = "illegal-algebra"


class NotExcellentTower(MotiveKitError):
    code = "not-excellent-tower"


class NegativeMultiplicity(MotiveKitError):
    code = "negative-multiplicity"


class ParseError(MotiveKitError):
    code = "parse-error"

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset
