"""Exception hierarchy shared by the analytic solvers and simulators."""


class ModelError(Exception):
    """Base class for every error raised by this package."""


class DomainError(ModelError, ValueError):
    """An argument lies outside the domain where the quantity is defined."""


class NumericError(ModelError, ArithmeticError):
    """Floating point evaluation lost too much precision or overflowed."""


class ConvergenceError(ModelError):
    """A truncated series or sum did not meet its stopping rule."""


class CapacityError(ModelError):
    """A configured size limit (table order, population cap, ...) was exceeded."""


class InternalError(ModelError):
    """Two independent evaluation routes disagree; indicates a bug."""
