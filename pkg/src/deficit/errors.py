class DeficitError(Exception):
    """Base class for all library errors."""


class TriangulationError(DeficitError, ValueError):
    pass


class ParseError(TriangulationError):
    pass


class NonInvolution(TriangulationError):
    pass


class UnmatchedFace(TriangulationError):
    pass


class NotManifold(TriangulationError):
    pass


class NotSimplicial(TriangulationError):
    pass


class MoveNotApplicable(DeficitError, ValueError):
    pass


class NonPositiveMu(DeficitError, ValueError):
    pass


class InvalidPair(DeficitError, ValueError):
    pass


class TargetOutOfRange(DeficitError, ValueError):
    pass


class NotBracketable(DeficitError, ValueError):
    pass


class UndefinedRatio(DeficitError, ValueError):
    """A degeneracy ratio needs both bracketing levels present and nonzero."""

    def __init__(self, message, upper_count=None, lower_count=None):
        super().__init__(message)
        self.upper_count = upper_count
        self.lower_count = lower_count


class BudgetExceeded(DeficitError, RuntimeError):
    pass


class InvalidC(DeficitError, ValueError):
    pass
