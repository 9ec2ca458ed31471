"""Exception types shared across the solvers."""


class SigeqError(Exception):
    """Base class for all library errors."""


class ShapeError(SigeqError, ValueError):
    """Array dimensions do not match the game description."""


class ArgumentError(SigeqError, ValueError):
    """An argument violates a precondition."""


class CoverageError(SigeqError, ValueError):
    """Quantizer bins do not cover the source support."""


class WrongGameError(SigeqError, ValueError):
    """Operation applied to the wrong game class (e.g. a channel is present
    where cheap talk is required)."""


class UnboundedError(SigeqError, ValueError):
    """Requested quantity has no finite answer (e.g. bin count with b = 0)."""


class UnboundedBelowError(SigeqError, ValueError):
    """A stage objective is not strictly convex, so the minimizer is not
    well defined."""


class SingularityError(SigeqError, ValueError):
    """A matrix that must be invertible is singular."""


class DegenerateGameError(SigeqError, ValueError):
    """Game parameters make the requested analysis degenerate
    (e.g. zero power penalty in the matrix dynamic program)."""


class DiagonalityError(SigeqError, ValueError):
    """Inputs violate the diagonality hypothesis of the matrix dynamic
    program."""


class ConvergenceError(SigeqError, RuntimeError):
    """An iterative solver failed to converge; carries diagnostics."""

    def __init__(self, message, trace=None):
        super().__init__(message)
        self.trace = trace


class VerificationError(SigeqError, RuntimeError):
    """An internal consistency check failed; carries residuals."""

    def __init__(self, message, residuals=None):
        super().__init__(message)
        self.residuals = residuals


class UncoveredRegimeError(SigeqError, ValueError):
    """Two-stage classifier parameters fall outside every printed regime
    guard; carries the evaluated thresholds."""

    def __init__(self, message, thresholds=None):
        super().__init__(message)
        self.thresholds = dict(thresholds or {})
