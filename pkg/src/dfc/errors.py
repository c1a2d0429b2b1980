"""Exception hierarchy shared by every module of the package."""


class DFCError(Exception):
    """Base class for all errors raised by dfc."""


class ModeError(DFCError, TypeError):
    """A value cannot be represented in the requested numeric mode."""


class PoleError(DFCError, ValueError):
    """A gamma function argument is a non-positive integer."""


class OrderError(DFCError, ValueError):
    """A fractional order is not strictly positive, or gamma is outside [0, 1]."""


class DomainMismatch(DFCError, ValueError):
    """Two grid functions do not live on the same finite grid."""


class InsufficientSamples(DFCError, ValueError):
    """A grid function is too short for the requested operation."""


class GammaMismatch(DFCError, ValueError):
    """Composed diamond operators were given different gamma weights."""


class IndexOutOfRange(DFCError, IndexError):
    """An evaluation index lies outside the sampled grid."""
