"""Exception types raised by the numerical routines."""

__all__ = ["NumericalError", "FitDivergedError"]


class NumericalError(RuntimeError):
    """An iterative numerical procedure failed to meet its accuracy contract.

    Raised by the eigensolver when rotation sweeps do not converge, by the
    matrix exponential when its halving self-check fails, and by the verifier
    when a fundamental matrix is numerically singular.
    """


class FitDivergedError(NumericalError):
    """Optimization produced a non-finite loss.

    Parameters
    ----------
    message : str
        Human-readable description.
    iteration : int
        1-based iteration at which the loss became non-finite.
    """

    def __init__(self, message: str, iteration: int):
        super().__init__(message)
        self.iteration = iteration
