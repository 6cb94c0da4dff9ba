"""
Exception hierarchy for the interpolation toolkit
"""

from typing import Any, Optional


class InterpolationError(Exception):
    """Base class for every error raised by this package"""


class MathematicalPreconditionError(InterpolationError):
    """Inputs are well formed but violate a mathematical precondition"""


class BoundaryNodeError(InterpolationError, ValueError):
    """A node lies on (or numerically too close to) the unit circle"""


class NotReducedError(InterpolationError, ValueError):
    """Numerator and denominator share a root"""


class UnsupportedSpaceError(InterpolationError, ValueError):
    """The operation has no coefficient formula for the requested space"""


class DegreeTooSmallError(InterpolationError, ValueError):
    """The polynomial degree cannot satisfy the interpolation constraints"""


class DegenerateNodesError(InterpolationError, ValueError):
    """Nodes with multiplicity > 1 were passed to a simple-node routine"""


class NoConvergenceError(InterpolationError, ArithmeticError):
    """
    An iterative method stopped before its convergence criterion held.

    ``best`` holds the best-so-far result; it is still a valid bound of the
    kind the raising operation documents.
    """

    def __init__(self, msg: str, best: Optional[Any] = None):
        super().__init__(msg)
        self.best = best


class PoleInDiskError(MathematicalPreconditionError):
    """A denominator root lies in the closed unit disk"""


class PoleOnSpectrumError(MathematicalPreconditionError):
    """A pole of a rational function coincides with a node / eigenvalue"""


class RootOnBoundaryError(MathematicalPreconditionError):
    """A root of the minimal polynomial is not strictly inside the disk"""


class SpectrumOutsideDiskError(MathematicalPreconditionError):
    """A matrix has an eigenvalue outside the open unit disk"""


class NotAContractionError(MathematicalPreconditionError):
    """The Wiener calculus was requested for a matrix of norm > 1"""


class BoundViolationError(MathematicalPreconditionError):
    """A verified matrix exceeded its computed functional-calculus bound"""


class InvariantViolationError(MathematicalPreconditionError):
    """A structural invariant failed on construction"""


class IllConditionedWarning(UserWarning):
    """A Gram or Pick matrix has a condition estimate above 1e12"""
