"""Exception hierarchy shared by every module of the package."""


class EntropyCFError(Exception):
    """Base class for all errors raised by :mod:`entropy_cf`."""


class DimensionMismatchError(EntropyCFError, ValueError):
    pass


class NotSymmetricError(EntropyCFError, ValueError):
    pass


class NotPositiveDefiniteError(EntropyCFError, ValueError):
    pass


class SingularMatrixError(EntropyCFError, ArithmeticError):
    """A pivot fell below the singularity threshold during a left division."""


class NoConvergenceError(EntropyCFError, ArithmeticError):
    pass


class DegeneratePhiError(EntropyCFError, ValueError):
    """The Cayley value is too close to zero for a simple-form expansion."""


class DegenerateDepthError(EntropyCFError, ArithmeticError):
    """A product continued fraction produced a zero partial denominator."""


class ZeroNumeratorError(EntropyCFError, ValueError):
    pass


class MatrixParseError(EntropyCFError, ValueError):
    def __init__(self, message, line=None, column=None):
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)
        self.reason = message
        self.line = line
        self.column = column
