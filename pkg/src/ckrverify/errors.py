"""Exception types raised across the package."""


class CkrError(Exception):
    """Base class for every error raised by ckrverify."""


class NotFinite(CkrError):
    pass


class NonstdZeroDivision(CkrError, ZeroDivisionError):
    pass


class PoleAtPoint(CkrError):
    pass


class GameError(CkrError):
    """The game failed structural validation."""


class DifferentPlayers(CkrError):
    pass


class WrongPlayer(CkrError):
    pass


class BadDistribution(CkrError):
    pass


class InvalidTremble(CkrError):
    pass


class NotCompletelyMixed(CkrError):
    pass


class NotInfinitesimallyClose(CkrError):
    pass


class IncompatibleModel(CkrError):
    pass


class ZeroConditioningEvent(CkrError):
    pass


class PreconditionFailed(CkrError):
    pass


class NotRationalizable(CkrError):
    pass


class RouteDisagreement(CkrError):
    """Two verification routes that must agree did not.

    Always indicates a bug in this package, never a property of the input.
    """


class BudgetExhausted(CkrError):
    """A bounded tremble search ran out of candidates.

    This is not a refutation: a certificate may still exist outside the
    searched family.
    """

    def __init__(self, message, tried=0):
        super().__init__(message)
        self.tried = tried


class FormMismatch(CkrError):
    pass


class ParseError(CkrError):
    pass
