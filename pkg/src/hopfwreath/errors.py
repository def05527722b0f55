"""Exception hierarchy shared by all modules."""


class HopfWreathError(Exception):
    """Base class; every domain error carries an optional witness."""

    def __init__(self, message="", witness=None):
        super().__init__(message)
        self.witness = witness


class NoSolution(HopfWreathError):
    pass


class DegreeOverflow(HopfWreathError):
    pass


class NotInvertible(HopfWreathError):
    pass


class SectionInvalid(HopfWreathError):
    pass


class NotInKernel(HopfWreathError):
    pass


class NotSurjective(HopfWreathError):
    pass


class KernelMismatch(HopfWreathError):
    pass


class WindowExceeded(HopfWreathError):
    pass


class ActionInvalid(HopfWreathError):
    pass


class CocycleNotInvertible(HopfWreathError):
    pass


class NotCleft(HopfWreathError):
    pass


class HomomorphismFailure(HopfWreathError):
    pass


class ValidationError(HopfWreathError):
    pass


class ParseError(HopfWreathError):
    pass
