"""Exception hierarchy shared by all fracline modules."""


class FraclineError(Exception):
    """Base class for every error raised by fracline."""


class InvalidArgumentError(FraclineError, ValueError):
    pass


class GridMismatchError(FraclineError, ValueError):
    pass


class SymmetryViolationError(FraclineError):
    """An inverse transform produced a non-negligible imaginary part."""


class SingularSymbolError(FraclineError, ValueError):
    """A fractional-integral symbol was evaluated at zero frequency."""


class NonzeroMeanError(FraclineError, ValueError):
    """A fractional integral was applied to a function with nonzero mean."""


class UnsupportedInputError(FraclineError, TypeError):
    pass


class NearSingularSymbolError(FraclineError):
    """Too many grid frequencies where the operator symbol nearly vanishes."""


class InfiniteGainError(FraclineError):
    pass


class NoCertificateError(FraclineError):
    pass
