"""Exception types shared across the package."""

from __future__ import annotations


class CasimirBoxError(Exception):
    """Base class for errors raised by this package."""


class ConvergenceError(CasimirBoxError):
    """A series could not be driven below the requested tolerance within
    the allowed summation budget."""

    def __init__(self, series: str, reached: float, requested: float):
        self.series = series
        self.reached = reached
        self.requested = requested
        super().__init__(
            f"{series}: tail bound reached {reached:.3e}, requested {requested:.3e}"
        )


class DerivativeInstabilityError(CasimirBoxError):
    """Richardson extrapolation levels of a finite-difference derivative
    disagree beyond the accepted threshold."""

    def __init__(self, what: str, disagreement: float, threshold: float):
        self.what = what
        self.disagreement = disagreement
        self.threshold = threshold
        super().__init__(
            f"{what}: Richardson levels disagree by {disagreement:.3e} "
            f"(relative), threshold {threshold:.3e}"
        )
