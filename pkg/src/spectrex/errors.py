"""Exception hierarchy shared by every module."""

from __future__ import annotations


class SpectrexError(Exception):
    """Base class for all library errors."""


class InputError(SpectrexError, ValueError):
    """Invalid argument: vertex out of range, bad parameters, malformed data."""


class Graph6Error(InputError):
    """Malformed graph6 text. ``offset`` is the byte position of the fault."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at byte {offset})")
        self.offset = offset


class CapabilityError(SpectrexError):
    """The request is valid but exceeds a desk-scale limit (order caps etc.)."""


class NotApplicableError(InputError):
    """A formula was asked for parameters outside its domain."""


class ConvergenceError(SpectrexError):
    """Iterative eigen-solver hit its iteration cap.

    ``best_residual`` is the smallest residual reached before giving up.
    """

    def __init__(self, message: str, best_residual: float, iterations: int):
        super().__init__(f"{message} (best residual {best_residual:.3e} after {iterations} iterations)")
        self.best_residual = best_residual
        self.iterations = iterations
