"""Exception hierarchy shared across the package."""


class ActapError(Exception):
    """Base class for all errors raised by :mod:`actap`."""


class DimensionError(ActapError, ValueError):
    """Array length does not match the chain."""


class DomainError(ActapError, ValueError):
    """Argument outside its allowed range."""


class DegenerateInputError(ActapError, ValueError):
    """Inputs for which the requested object is undefined (e.g. no unique dark state)."""


class ProtocolStateError(ActapError, RuntimeError):
    """The spectrum does not contain the zero-energy state the protocol relies on."""


class DegenerateSpectrumError(ActapError, RuntimeError):
    """Energy gap too small for the adiabaticity ratio to be meaningful."""


class IntegratorError(ActapError, RuntimeError):
    """Time stepping lost norm; the grid is too coarse."""
