"""Exception hierarchy shared by every module of the package."""


class SurfKernelError(Exception):
    """Base class for all errors raised by surfkernel."""


class GroupError(SurfKernelError):
    pass


class InvalidOrderError(GroupError, ValueError):
    pass


class CapacityError(GroupError):
    pass


class TableValidationError(GroupError, ValueError):
    """A multiplication table failed one of the group axioms."""


class MissingIdentityError(TableValidationError):
    pass


class NotInvertibleError(TableValidationError):
    pass


class NotAssociativeError(TableValidationError):
    pass


class SignatureError(SurfKernelError, ValueError):
    pass


class DomainError(SurfKernelError, KeyError):
    """A word mentions a generator outside the alphabet in use."""

    def __str__(self):
        return Exception.__str__(self)


class ShapeError(SurfKernelError, ValueError):
    pass


class InconsistentGenusError(SurfKernelError, ValueError):
    pass


class InvalidPeriodError(SurfKernelError, ValueError):
    pass


class ApplicabilityError(SurfKernelError, ValueError):
    pass


class UnreachableCosetError(SurfKernelError):
    pass


class TransversalError(SurfKernelError, ValueError):
    pass


class NotInKernelError(SurfKernelError, ValueError):
    pass


class OrderingError(SurfKernelError, ValueError):
    pass


class SimplificationIncomplete(SurfKernelError):
    """Tietze simplification stopped short of a one-relator surface presentation.

    The partially simplified presentation is kept on ``partial``.
    """

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class JobParseError(SurfKernelError, ValueError):
    pass
