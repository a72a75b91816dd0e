"""Exception hierarchy.

Every error raised by the package derives from :class:`VPolyError`. The CLI
maps :class:`ValidationError` to exit status 1, :class:`TooLarge` to 2 and
:class:`VerificationError` to 3.
"""

from __future__ import annotations


class VPolyError(Exception):
    """Base class for all package errors."""


class ValidationError(VPolyError, ValueError):
    """Input is malformed or violates an operation's precondition."""


class TooLarge(VPolyError):
    """A configured size cap (edges or states) would be exceeded."""


class VerificationError(VPolyError):
    """Two routes that must agree produced different results."""


# weights
class KindMismatch(ValidationError):
    pass


class InexactWeight(ValidationError):
    pass


# multigraph
class UnknownEdge(ValidationError, KeyError):
    pass


class LoopContraction(ValidationError):
    pass


class MixedWeightKinds(ValidationError):
    pass


class DanglingEndpoint(ValidationError):
    pass


class DuplicateId(ValidationError):
    pass


# polynomial
class MissingVariable(ValidationError, KeyError):
    def __init__(self, keys):
        self.keys = sorted(keys)
        super().__init__(f"unassigned variables: {', '.join(self.keys)}")


class PolynomialParseError(ValidationError):
    pass


# engine
class ZeroAlpha(ValidationError):
    pass


class NonPositiveWeight(ValidationError):
    pass


class InexactValue(ValidationError):
    pass


# potts
class SpecMismatch(ValidationError):
    pass


class ZeroPartition(ValidationError, ZeroDivisionError):
    pass


class InexactField(ValidationError):
    pass


class NonConstantJ(ValidationError):
    pass


class NonIntegerMultiplier(ValidationError):
    pass


class TruncationViolation(ValidationError):
    pass


class RangeWarning(ValidationError, UserWarning):
    """An exponent exceeds the double-precision safe range (|x| > 700)."""


# cli / io
class ParseError(ValidationError):
    def __init__(self, message: str, *, line: int | None = None, field: str | None = None):
        self.line = line
        self.field = field
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field {field!r}")
        super().__init__(f"{message} ({', '.join(where)})" if where else message)
