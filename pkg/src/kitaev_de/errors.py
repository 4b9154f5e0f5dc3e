"""Exception and warning types shared by all modules."""


class KitaevDEError(Exception):
    """Base class for every error raised by this library."""


class ZeroVectorError(KitaevDEError):
    """Both Anderson-vector numerators vanish: the gap closes at this momentum."""


class GaplessSpecError(KitaevDEError):
    """The operation needs a gapped spectrum but min_k eps_k is below tolerance."""


class TolAmbiguousError(KitaevDEError):
    """A singular value sits within a factor of ten of the null-space cutoff,
    so the zero-mode count is unreliable at this tolerance."""


class NormalizationFailureError(KitaevDEError):
    """A diagonal distribution failed to normalise; signals a convention bug
    upstream of the subset-correlator expansion."""


class DegenerateGroundStateError(KitaevDEError):
    """The two lowest eigenvalues (or the smallest quasiparticle energy) are
    closer than the degeneracy tolerance; correlators are ill-defined."""


class NonUniformGridError(KitaevDEError):
    """Susceptibility requires a uniformly spaced parameter grid."""


class InsufficientPointsError(KitaevDEError):
    """Not enough data points for the requested fit."""


class IllConditionedError(KitaevDEError):
    """Design matrix condition number exceeds the stability threshold."""


class OddDimensionError(KitaevDEError):
    """Pfaffians are defined for even-dimensional matrices only."""


class NumericalWindingWarning(UserWarning):
    """The accumulated winding is farther than the snap tolerance from every
    half-integer; the warning message carries the raw value."""
