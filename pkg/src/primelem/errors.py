"""Exception hierarchy shared by every module of the package."""


class PrimelemError(Exception):
    """Base class for all errors raised by primelem."""


class InputError(PrimelemError, ValueError):
    """An argument is malformed or outside an operation's domain."""


class DegenerateInputError(InputError):
    """Zero or constant polynomial where a nonconstant one is required."""


class InvalidCoefficientError(InputError):
    pass


class ShapeError(InputError):
    """Matrix shapes do not conform."""


class ContractViolationError(PrimelemError):
    """A caller-certified precondition turned out to be false."""


class NoPrimitiveElementError(PrimelemError):
    pass


class SearchExhaustedError(PrimelemError):
    """The bounded search for a linear form ran out of candidates."""


class HypothesisNotMetError(PrimelemError):
    """More than one input matrix has an inseparable minimal polynomial."""


class InternalError(PrimelemError):
    """A self-check failed. This always indicates a bug."""
