"""Exception hierarchy shared by every module.

The CLI maps these onto exit codes, so each failure mode gets its own class.
"""


class MukaiError(Exception):
    """Base class for all errors raised by this package."""


class InvalidInputError(MukaiError, ValueError):
    """Malformed vector, class or trace data (CLI exit code 1)."""


class PreconditionError(MukaiError, ValueError):
    """An operation was applied outside its domain."""


class SearchBoundExceeded(MukaiError, RuntimeError):
    """A bounded E8 search found nothing within the configured radius."""

    def __init__(self, what, radius):
        super().__init__(f"{what}: no solution within search radius {radius}")
        self.what = what
        self.radius = radius


class StepCapExceeded(MukaiError, RuntimeError):
    """A reduction needed more moves than the configured cap."""


class UnreachableTarget(PreconditionError):
    """A pairing target is not a multiple of the vector's content."""


class TraceReplayError(MukaiError, ValueError):
    """A move trace failed to replay; ``step`` is the offending index (or None for the final check)."""

    def __init__(self, step, message):
        where = "final vector" if step is None else f"step {step}"
        super().__init__(f"{where}: {message}")
        self.step = step


class InternalConsistencyError(MukaiError, AssertionError):
    """An invariant that the mathematics guarantees was violated (CLI exit code 4)."""


class IntegerOverflowError(MukaiError, OverflowError):
    """A fixed-width (numpy) computation would leave its exact range."""
