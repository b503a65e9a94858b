"""Exception hierarchy shared by every module.

The CLI maps any ``NondegenError`` to exit status 1 and prints the class name.
"""


class NondegenError(ValueError):
    """Base class for domain errors."""


class DimensionMismatch(NondegenError):
    pass


class DegenerateInput(NondegenError):
    pass


class IdenticalCenters(NondegenError):
    pass


class EmptyOrbit(NondegenError):
    """Two spheres do not meet in a sphere of positive radius.

    ``tangent`` is set when they touch in exactly one point, which is then
    available as ``point``.
    """

    def __init__(self, message, tangent=False, point=None):
        super().__init__(message)
        self.tangent = tangent
        self.point = point


class BetaOutOfRange(NondegenError):
    pass


class NotNondegenerate(NondegenError):
    """Raised by the peeling certifier; ``pair`` is the violating (q1, q2)."""

    def __init__(self, message, pair, intersection, degree):
        super().__init__(message)
        self.pair = pair
        self.intersection = intersection
        self.degree = degree


class GroundTooLarge(NondegenError):
    pass


class BudgetExceeded(NondegenError):
    pass


class InfeasibleDedup(NondegenError):
    pass


class UnrepresentableRadius(NondegenError):
    pass


class Exhausted(NondegenError):
    pass


class InfeasibleParameters(NondegenError):
    pass


class DuplicatePoints(NondegenError):
    pass


class CoincidentPoints(NondegenError):
    pass


class InvalidShape(NondegenError):
    pass


class MissingParams(NondegenError):
    pass


class InternalError(NondegenError):
    pass


class FormatError(NondegenError):
    pass
