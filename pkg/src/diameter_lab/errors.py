"""Exception hierarchy shared by every module."""


class DiameterLabError(Exception):
    """Base class; the CLI maps subclasses to exit codes."""

    exit_code = 2


class InvalidComplex(DiameterLabError, ValueError):
    pass


class NotAFace(DiameterLabError, ValueError):
    pass


class Disconnected(DiameterLabError):
    pass


class SizeLimit(DiameterLabError):
    exit_code = 3


class BudgetExceeded(DiameterLabError):
    exit_code = 3

    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best


class TooSmall(DiameterLabError, ValueError):
    pass


class NotNormal(DiameterLabError):
    pass


class NotFlag(DiameterLabError):
    pass


class BadAnchor(DiameterLabError, ValueError):
    pass


class NotCertified(DiameterLabError):
    """A construction produced a path that fails its own certificate check."""

    exit_code = 1

    def __init__(self, message, level=None, witness=None):
        super().__init__(message)
        self.level = level
        self.witness = witness
