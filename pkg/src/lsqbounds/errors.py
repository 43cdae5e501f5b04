"""Exception types shared across the package."""


class LsqBoundsError(Exception):
    """Base class for all errors raised by lsqbounds."""


class DomainError(LsqBoundsError):
    """An argument is outside the mathematical domain of the operation."""


class NotSymmetric(LsqBoundsError):
    """A matrix expected to be symmetric is not, beyond tolerance."""


class NotPositiveDefinite(LsqBoundsError):
    """A matrix expected to be positive definite has a non-positive pivot."""


class RankDeficient(LsqBoundsError):
    """A design matrix is numerically rank deficient."""


class DimensionMismatch(LsqBoundsError):
    """Array shapes are incompatible for the requested operation."""


class UnsupportedMixture(LsqBoundsError):
    """The chi-square mixture has more nonzero components than supported."""
