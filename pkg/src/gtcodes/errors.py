"""Exception hierarchy shared by the library and the CLI."""


class GtcError(Exception):
    """Base class for every error raised by gtcodes."""


class PreconditionError(GtcError, ValueError):
    """Inputs violate an operation's documented precondition."""


class ModulusError(PreconditionError):
    """Operands live over different prime fields, or the modulus is not prime."""


class ShapeError(PreconditionError):
    """Operands are not conformable."""


class NoInverseError(GtcError, ZeroDivisionError):
    """Zero has no multiplicative inverse."""


class SingularMatrixError(GtcError, ArithmeticError):
    """Square matrix without an inverse."""


class NotACodewordError(GtcError, ValueError):
    pass


class AmbiguousSyndromeError(GtcError):
    """Two weight-1 errors share a syndrome (or one has syndrome zero): d < 3."""


class UncorrectableError(GtcError):
    """Received word has a nonzero syndrome that matches no single error."""

    def __init__(self, message, syndrome=None):
        super().__init__(message)
        self.syndrome = syndrome


class EnumerationLimitError(GtcError):
    """Exhaustive enumeration would exceed the configured budget."""


class TheoremViolation(GtcError):
    """A structural identity or bound that must hold was found broken.

    ``witness`` carries whatever data reproduces the failure.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class MaskError(PreconditionError):
    pass


class MatrixParseError(GtcError, ValueError):
    def __init__(self, message, line=None, column=None):
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)
        self.line = line
        self.column = column
