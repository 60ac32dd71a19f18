"""Exception types raised across the package."""


class SwBranchError(Exception):
    """Base class for every error raised by swbranch."""


class NotPrime(SwBranchError, ValueError):
    pass


class NonInvertibleDenominator(SwBranchError, ZeroDivisionError):
    """The denominator vanishes at some nontrivial root of unity."""


class NotCoprime(SwBranchError, ValueError):
    pass


class UnsupportedGroup(SwBranchError, ValueError):
    pass


class SingularForm(SwBranchError, ValueError):
    pass


class OutOfRange(SwBranchError, ValueError):
    pass


class DimensionMismatch(SwBranchError, ValueError):
    pass


class ParityViolation(SwBranchError, ValueError):
    pass


class NotSharp(SwBranchError, ValueError):
    pass


class NonIntegralDimension(SwBranchError, ArithmeticError):
    """A moduli-space dimension came out non-integral: the inputs contradict each other."""


class NonIntegralIndex(SwBranchError, ArithmeticError):
    """An APS index came out non-integral: the inputs contradict each other."""


class IntegralityViolation(SwBranchError, ArithmeticError):
    pass


class MalformedScenario(SwBranchError, ValueError):
    def __init__(self, message, path=()):
        self.path = tuple(path)
        where = "/".join(str(p) for p in self.path) or "<root>"
        super().__init__(f"{where}: {message}")
