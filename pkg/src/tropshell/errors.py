"""Exception hierarchy shared by all modules."""


class TropshellError(Exception):
    """Base class for every error raised by this package."""


class PreconditionError(TropshellError, ValueError):
    """An input violates the documented precondition of an operation."""


class DimensionMismatchError(PreconditionError):
    pass


class NotPointedError(PreconditionError):
    """A polyhedron contains an affine line and no lineality was declared."""


class NonGenericError(PreconditionError):
    """A line or perturbation meets two facet hyperplanes in the same point."""


class BudgetExceededError(TropshellError):
    """A backtracking search ran out of its node budget."""

    def __init__(self, message, explored=None):
        super().__init__(message)
        self.explored = explored


class ConstructionError(TropshellError):
    """A constructor could not produce an object meeting its postcondition."""
