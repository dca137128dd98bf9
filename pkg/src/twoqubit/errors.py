"""Exception types raised across the package."""


class TwoQubitError(Exception):
    """Base class for all package errors."""


class StateError(TwoQubitError, ValueError):
    """A matrix failed validation as a two-qubit state.

    ``magnitude`` carries the size of the violation (asymmetry, trace
    defect or most negative eigenvalue).
    """

    def __init__(self, message, magnitude=None):
        super().__init__(message)
        self.magnitude = magnitude


class NotHermitian(StateError):
    pass


class TraceNotOne(StateError):
    pass


class NotPositive(StateError):
    pass


class NotAState(StateError):
    pass


class NoConvergence(TwoQubitError, RuntimeError):
    pass


class InvalidSpec(TwoQubitError, ValueError):
    pass


class SameSign(TwoQubitError, ValueError):
    pass


class NotOnHypersurface(TwoQubitError, ValueError):
    pass


class NotDivisible(TwoQubitError, ArithmeticError):
    pass


class ZeroConstantTerm(TwoQubitError, ArithmeticError):
    pass


class TooLarge(TwoQubitError, ValueError):
    pass


class Mismatch(TwoQubitError, AssertionError):
    def __init__(self, degree, values):
        super().__init__(f"dimension mismatch at multidegree {degree}: {values}")
        self.degree = degree
        self.values = values


class AuditFailure(TwoQubitError, AssertionError):
    def __init__(self, message, index):
        super().__init__(f"sample {index}: {message}")
        self.index = index
