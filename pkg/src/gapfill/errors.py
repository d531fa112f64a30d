"""Exception types shared across the package."""


class GapfillError(Exception):
    """Base class for all gapfill-specific errors."""


class InvalidGap(GapfillError):
    """Gap specification not accepted by a solver (e.g. m > 0 with s != 0)."""


class SingularSystem(GapfillError):
    """A linear solve lost effective rank.

    The recovery systems are nonsingular in exact arithmetic, so this
    signals a numerics problem (or parameters far outside their valid
    range) rather than an expected condition.
    """


class MissingGroundTruth(GapfillError):
    """An operation needing the true sample value was given a sequence without it."""


class ScenarioMismatch(GapfillError):
    """A robustness scenario is internally inconsistent (noise overlapping the gap, ...)."""


class DimensionTooLarge(GapfillError):
    """Matrix dimension beyond the supported 17x17 (block length m+1 > 17)."""


class EmptyInput(GapfillError):
    """An aggregate was requested over an empty collection."""
