"""Exception hierarchy shared by every module."""


class SubtileError(Exception):
    """Base class for all library errors."""


class ShapeError(SubtileError, ValueError):
    """A cell set is not a valid polyomino (empty or disconnected)."""


class InvalidTilingError(SubtileError, ValueError):
    """An operation that needs a valid tiling received an invalid one."""


class PreconditionError(SubtileError, ValueError):
    """Inputs violate the documented precondition of an operation."""


class BudgetExceeded(SubtileError):
    """A search hit its node cap before reaching a definite answer.

    This is deliberately not a subclass of ValueError: "could not finish"
    must never be confused with a negative answer.
    """

    def __init__(self, budget, message=None):
        self.budget = budget
        super().__init__(message or f"search budget of {budget} nodes exceeded")
