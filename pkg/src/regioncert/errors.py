"""Exception types raised across the package."""


class IntervalError(ArithmeticError):
    """Base class for failures of certified interval computations."""


class DivisionByZeroInterval(IntervalError, ZeroDivisionError):
    """The divisor interval contains zero."""


class DualMisuse(IntervalError):
    """A dual interval was combined in a way no cancellation rule covers."""


class SingularEnclosure(IntervalError):
    """An interval matrix could not be shown to be nonsingular.

    Raised by LU decomposition when every candidate pivot of a column
    contains zero.
    """

    def __init__(self, column, message=None):
        self.column = column
        super().__init__(message or f"no pivot excluding zero in column {column}")


class PrecisionMismatch(ValueError):
    """Operands were produced under different precision contexts."""


class DimensionMismatch(ValueError):
    """Vector or matrix dimensions do not agree."""


class NonSquareSystem(ValueError):
    """A polynomial system does not have as many equations as variables."""


class SingularJacobian(ArithmeticError):
    """A point Jacobian is numerically singular (plain arithmetic)."""


class ParseError(ValueError):
    """Malformed system or points file.

    ``line`` and ``column`` are 1-based positions of the offending token.
    """

    def __init__(self, message, line=None, column=None, source=None):
        self.message = message
        self.line = line
        self.column = column
        self.source = source
        where = source or "<input>"
        if line is not None:
            where += f":{line}"
            if column is not None:
                where += f":{column}"
        super().__init__(f"{where}: {message}")
