"""Exception hierarchy shared by the services and the command line."""


class TorusSpectrumError(ValueError):
    """Base class for every error raised by this package."""


class DomainError(TorusSpectrumError):
    """A point lies outside the evaluation domain (e.g. rho <= 0)."""


class NonFiniteError(TorusSpectrumError):
    """A surface derivative evaluated to NaN or infinity."""


class InvalidAlphaError(TorusSpectrumError):
    """The aspect ratio is outside (0, 1)."""


class InvalidTruncationError(TorusSpectrumError):
    """The Fourier truncation is below the pentadiagonal minimum."""


class GridTooSmallError(TorusSpectrumError):
    """The quadrature grid is too coarse to be an oracle."""


class ZeroVectorError(TorusSpectrumError):
    """A coefficient vector cannot be normalized."""


class SolverError(TorusSpectrumError):
    """The eigenvalue solve did not produce a usable spectrum."""


class NonRealSpectrumError(SolverError):
    """An eigenvalue carries an imaginary part above the reality threshold."""


class SolverFailureError(SolverError):
    """The underlying LAPACK decomposition failed."""
