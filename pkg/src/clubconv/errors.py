"""Exception hierarchy for the clubconv toolkit.

Every error raised by the engine derives from :class:`ClubConvError`, so
callers (and the CLI) can catch one base class and map the concrete type
to an exit diagnostic.
"""


class ClubConvError(Exception):
    """Base class for all clubconv errors."""


class MalformedInput(ClubConvError):
    """Input stream could not be parsed, or violates its declared layout."""


class NonPositiveValue(ClubConvError):
    """A panel cell is zero or negative; panels must be strictly positive."""


class EmptyPanel(ClubConvError):
    """Fewer than 2 units or 5 periods survive ingestion."""


class MissingTarget(ClubConvError):
    """A panel unit has no entry in the supplied target vector."""


class SmoothingBrokePositivity(ClubConvError):
    """A smoothed trend dipped to zero or below for some unit."""


class DegenerateVariance(ClubConvError):
    """Cross-sectional variance is zero somewhere the log-t regression needs it."""


class SampleTooSmall(ClubConvError):
    """Too few observations remain after trimming to run a regression."""


class BandwidthTooLarge(ClubConvError):
    """HAC bandwidth does not fit inside the regression sample."""


class InvalidSubset(ClubConvError):
    """A transition-test subset does not span exactly two adjacent clubs."""


class SeparationError(ClubConvError):
    """Perfect separation: the probit likelihood has no interior maximum."""


class SingularDesign(ClubConvError):
    """Design matrix is rank deficient."""


class NoConvergence(ClubConvError):
    """An iterative fit exhausted its iteration budget."""


class InvalidConfig(ClubConvError):
    """A configuration object violates its invariants."""


class DimensionMismatch(ClubConvError):
    """Vector length does not match the fitted coefficient dimension."""
