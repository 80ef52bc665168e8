"""Exception hierarchy shared by every cogen module."""


class CogenError(Exception):
    """Base class for all errors raised by cogen."""


class ParseError(CogenError, ValueError):
    def __init__(self, message, position=None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class DegreeMismatchError(CogenError, ValueError):
    pass


class PreconditionError(CogenError, ValueError):
    """Input rejected because a documented precondition does not hold."""


class OutOfDomainError(PreconditionError):
    pass


class BudgetExceededError(CogenError, RuntimeError):
    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class InternalInconsistencyError(CogenError, RuntimeError):
    """A computation contradicted a proven mathematical fact.

    Raising this means a bug (or a genuine discrepancy with the published
    result); ``trace`` carries whatever context the raiser had.
    """

    def __init__(self, message, trace=None):
        super().__init__(message)
        self.trace = trace
