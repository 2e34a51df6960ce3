"""Exception types shared across the package."""


class DipoleLandauError(Exception):
    """Base class for all package-specific errors."""


class NonPositiveFrequency(DipoleLandauError):
    """The cyclotron frequency is not positive; no Landau-type bound states."""


class UnsupportedLevel(DipoleLandauError):
    """Polynomial degree n outside the supported range (n >= 1)."""


class SeriesNotConverged(DipoleLandauError):
    """Open-ended series evaluation hit the term cap before the tail tolerance."""


class DegenerateConstraint(DipoleLandauError):
    """Both confining couplings vanish; truncation does not constrain the frequency."""


class NoPositiveRoot(DipoleLandauError):
    """The frequency constraint has no admissible positive root."""


class EmptyBracket(DipoleLandauError):
    """No sign change of the truncation residual inside the scan bracket."""


class GridTooCoarse(DipoleLandauError):
    """Grid refinement moved the requested eigenvalues by more than the tolerance."""


class NotQuantized(DipoleLandauError):
    """The supplied frequency does not satisfy the truncation condition."""


class ConfigError(DipoleLandauError):
    """Invalid run configuration."""
