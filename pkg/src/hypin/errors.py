"""Exception types raised by the hypin library."""


class HypinError(Exception):
    """Base class for every error raised by this package."""


class DomainError(HypinError, ValueError):
    """An argument lies outside the domain where a formula is defined."""


class NoRootError(HypinError):
    """A bracketing root search found no sign change."""


class InvalidL(HypinError, ValueError):
    """The number of rotation centers is below 4."""


class InvalidArgument(HypinError, ValueError):
    pass


class SingularSystemError(HypinError):
    """The KKT matrix is numerically singular."""


class NonConvergence(HypinError):
    pass


class InconclusiveError(HypinError):
    """A second-order test could not decide (tiny minors or noisy Hessian)."""
