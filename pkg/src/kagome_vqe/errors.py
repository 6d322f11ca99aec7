"""Exception types raised across the package."""


class KagomeError(Exception):
    """Base class for package errors."""


class UnknownPatchError(KagomeError, NameError):
    """Requested patch name is not known."""


class SpecError(KagomeError, ValueError):
    """A patch, ansatz or run specification is malformed."""


class CoveringError(KagomeError):
    """No dimer covering of the required size exists."""


class EmbedError(KagomeError):
    """The patch does not fit the implemented square-grid pattern."""


class EmptyOperatorError(KagomeError, ValueError):
    """An operator was requested on an empty edge subset."""


class ConvergenceError(KagomeError):
    """An iterative solver ran out of budget.

    ``residuals`` holds the best residual norms reached.
    """

    def __init__(self, message, residuals=()):
        super().__init__(message)
        self.residuals = list(residuals)


class EstimationError(KagomeError):
    """A shot-based estimate could not be formed."""


class FormatError(KagomeError, ValueError):
    """An input data file lacks required columns or rows."""
