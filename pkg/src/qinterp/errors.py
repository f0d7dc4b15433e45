"""Exception hierarchy shared by every module."""


class QInterpError(Exception):
    """Base class for all library errors."""


class NotInvertible(QInterpError):
    pass


class NotAutomorphism(QInterpError):
    pass


class NotEmbedding(QInterpError):
    pass


class NotEpimorphism(QInterpError):
    pass


class NotBump(QInterpError):
    pass


class NotCofinal(QInterpError):
    pass


class NotConjugate(QInterpError):
    pass


class PinInconsistent(QInterpError):
    pass


class NotRepresentable(QInterpError):
    """The requested object exists but not as a finitely piecewise-affine map."""


class IterationBudgetExceeded(QInterpError):
    pass


class BudgetExceeded(QInterpError):
    pass


class NormalizationFailed(QInterpError):
    pass


class PreconditionViolated(QInterpError):
    pass


class ActionMismatch(QInterpError):
    pass


class DomainError(QInterpError):
    """Pieces of a map literal do not describe a weakly increasing map on Q."""


class DSLSyntaxError(QInterpError):
    def __init__(self, message, position=None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
