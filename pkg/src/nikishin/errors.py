"""Exception types raised across the package."""


class NikishinError(Exception):
    """Base class for all package errors."""


class OrderExceeded(NikishinError, IndexError):
    """A moment was requested beyond the available table."""


class TooCloseToSupport(NikishinError, ValueError):
    """An evaluation point lies within the clearance of a support."""


class ZeroArgument(NikishinError, ValueError):
    """The square root branch or m-function was evaluated at zero."""


class UnsupportedWeight(NikishinError, ValueError):
    """A weight specification cannot be integrated as requested."""


class SignIndefinite(NikishinError, ValueError):
    """A measure changes sign on its support."""


class OverlappingSupports(NikishinError, ValueError):
    """Two supports that must be disjoint share interior points."""


class NonIntegrable(NikishinError, ValueError):
    """Supports touch (or nearly touch) without the touching flag."""


class NonRealFactor(NikishinError, ValueError):
    """A circle bracket factor iF is not real on the first arc."""


class BranchInsideSupport(NikishinError, ValueError):
    """The branch cut direction lies on one of the arcs."""


class WrongArity(NikishinError, ValueError):
    """The operation requires a different number of measures."""


class FVanishes(NikishinError, ValueError):
    """The Caratheodory function vanishes (numerically) on the first arc."""


class SizeMismatch(NikishinError, ValueError):
    """Function family and point tuple have different lengths."""


class KindMismatch(NikishinError, TypeError):
    """A real-line object was passed where a circle one is needed, or vice versa."""


class ShapeMismatch(NikishinError, ValueError):
    """Matrix and function lists have incompatible shapes."""


class TooManyAtoms(NikishinError, ValueError):
    """Exact finite-sum evaluation would be too expensive."""


class CoincidentPoints(NikishinError, ValueError):
    """Two points that must differ coincide."""


class NotOrdered(NikishinError, ValueError):
    """A point tuple is not strictly increasing."""


class SingularSystem(NikishinError, ValueError):
    """The moment matrix is not (numerically) invertible."""


class MixedParity(NikishinError, ValueError):
    """The components of a circle multi-index do not share parity."""


class IndexConditionViolated(NikishinError, ValueError):
    """The multi-index does not satisfy the hypothesis of the check."""


class LossOfPositivity(NikishinError, ArithmeticError):
    """A recurrence coefficient that must be positive came out non-positive."""


class TooShort(NikishinError, ValueError):
    """Too few coefficients for the requested operation."""


class TruncationTooSmall(NikishinError, ValueError):
    """The operator truncation cannot reproduce the requested moments."""


class ModulusViolation(NikishinError, ArithmeticError):
    """A Verblunsky coefficient of modulus at least one was produced."""
