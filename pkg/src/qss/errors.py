"""Exception hierarchy.

Every error raised by the library derives from :class:`QssError`. The CLI maps
the three families below onto exit codes.
"""

from __future__ import annotations


class QssError(ValueError):
    """Base class for all library errors."""


class ValidationError(QssError):
    """The input is well formed but violates a mathematical requirement."""


class ResourceGuard(QssError):
    """A desk-scale cap would be exceeded; rerun with an override to force."""


class InputError(QssError):
    """Malformed input: bad entries, bad polynomials, unparsable files."""


# field
class NonPrimeCharacteristic(InputError):
    pass


class BadPolynomial(InputError):
    pass


class ReduciblePolynomial(BadPolynomial):
    pass


class MissingPolynomial(InputError):
    pass


class FieldMismatch(InputError):
    pass


class DivisionByZero(QssError, ZeroDivisionError):
    pass


class LengthMismatch(InputError):
    pass


class BadEntry(InputError):
    pass


# codes
class ZeroCode(InputError):
    pass


class EnumerationTooLarge(ResourceGuard):
    pass


# scheme
class NotCss(ValidationError):
    """The dual of the code is not contained in the code."""


class WrongDimension(ValidationError):
    pass


class ImpureCode(ValidationError):
    pass


class BadG(ValidationError):
    pass


# simulation
class DimensionTooLarge(ResourceGuard):
    pass


class DimensionMismatch(InputError):
    pass


class ZeroMultiplier(InputError):
    pass


class SameWire(InputError):
    pass


class NotAuthorizedWitness(ValidationError):
    pass


class NonDeterministicAncilla(ValidationError):
    pass


# access
class OperatorScanTooLarge(ResourceGuard):
    pass


class SizeMismatch(InputError):
    pass


class ParseError(InputError):
    def __init__(self, message: str, line: int | None = None) -> None:
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)
