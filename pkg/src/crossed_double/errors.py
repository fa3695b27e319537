"""Exception hierarchy shared by every module of the package."""


class CrossedDoubleError(Exception):
    """Base class for all errors raised by crossed_double."""


class SingularMatrix(CrossedDoubleError, ZeroDivisionError):
    pass


class NotAGroup(CrossedDoubleError, ValueError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class ShapeMismatch(CrossedDoubleError, ValueError):
    pass


class GradingViolation(CrossedDoubleError, ValueError):
    def __init__(self, condition, witness=None):
        super().__init__(f"grading condition violated: {condition} (witness {witness})")
        self.condition = condition
        self.witness = witness


class NotConvolutionInvertible(CrossedDoubleError, ValueError):
    pass


class AntipodeNotInvertible(CrossedDoubleError, ValueError):
    pass


class NotHopfAutomorphism(CrossedDoubleError, ValueError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotHomomorphism(CrossedDoubleError, ValueError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotInvertible(CrossedDoubleError, ValueError):
    pass


class UnknownExample(CrossedDoubleError, KeyError):
    pass


class PreconditionFailed(CrossedDoubleError, ValueError):
    def __init__(self, hypothesis, detail=""):
        super().__init__(f"precondition failed: {hypothesis}" + (f" ({detail})" if detail else ""))
        self.hypothesis = hypothesis


class UnsupportedCharacteristic(CrossedDoubleError, ValueError):
    pass


class SchemaError(CrossedDoubleError, ValueError):
    pass


class ValidationFailed(CrossedDoubleError, ValueError):
    """Raised when a construction is handed (or produces) a structure failing validation."""

    def __init__(self, report):
        first = report.failures[0] if report.failures else None
        super().__init__(f"validation failed: {first.axiom if first else '?'}")
        self.report = report
