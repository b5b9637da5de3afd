"""Exception types raised by the package."""


class ShapeError(ValueError):
    """Matrix dimensions are incompatible or outside the supported set."""


class DomainError(ValueError):
    """Input lies outside the mathematical domain of an operation."""


class FamilyMismatchError(TypeError):
    """Operation is not defined for the given channel family."""


class UnsupportedRepresentationError(NotImplementedError):
    """The requested representation is not available for this family."""


class SingularityError(ArithmeticError):
    """A matrix that must be inverted is singular or ill-conditioned.

    Attributes:
        smallest_singular_value: smallest singular value of the offending matrix.
    """

    def __init__(self, message, smallest_singular_value=None):
        super().__init__(message)
        self.smallest_singular_value = smallest_singular_value


class GeneratorSingularityError(ArithmeticError):
    """The time-local generator diverges (the map is not invertible at ``t``)."""

    def __init__(self, message, t):
        super().__init__(message)
        self.t = t
