"""Exception types shared across the analysis and simulation modules."""

__all__ = [
    "AnalysisError",
    "BoundaryCase",
    "DegenerateReduction",
    "FrrIndeterminate",
    "IllConditioned",
    "NotBracketed",
    "NotConverged",
    "ResonanceError",
    "StiffnessError",
    "WrongBranch",
]


class AnalysisError(Exception):
    """A numerical procedure could not produce a trustworthy result."""


class NotBracketed(AnalysisError):
    """The residual does not change sign over the supplied bracket."""


class IllConditioned(AnalysisError):
    """The eigenbasis is too close to defective to transform through."""


class ResonanceError(AnalysisError):
    """The quadratic-coefficient system for the invariant surface is singular."""


class DegenerateReduction(AnalysisError):
    """A reduction coefficient vanished; the planar normal form is undefined."""


class BoundaryCase(AnalysisError):
    """The normal-form parameter sits on a catalog boundary."""


class NotConverged(AnalysisError):
    """An iterative locator exhausted its iteration budget."""


class WrongBranch(AnalysisError):
    """A located candidate fails the positivity condition on the middle coefficient."""


class FrrIndeterminate(ArithmeticError):
    """The functional response ratio has a vanishing denominator."""


class StiffnessError(AnalysisError):
    """Integration step size underflowed.

    The partial trajectory accumulated before the failure is attached as
    the ``trajectory`` attribute.
    """

    def __init__(self, message, trajectory=None):
        super().__init__(message)
        self.trajectory = trajectory
