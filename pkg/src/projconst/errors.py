"""Exception taxonomy shared by all modules.

The CLI maps these onto exit codes: PreconditionError / InvariantViolation
and friends are usage or input errors (exit 1), GuardRefusal is a refused
oversized request (exit 2), ResourceExhausted is a blown resource budget
(exit 3).
"""

from __future__ import annotations


class ProjconstError(Exception):
    """Base class for all errors raised by this package."""


class PreconditionError(ProjconstError):
    """An operation was called with inputs violating its preconditions."""


class InvariantViolation(ProjconstError):
    """A constructed value failed one of its declared invariants.

    ``invariant`` names the failed invariant, ``violation`` is the measured
    magnitude of the worst failure (when meaningful).
    """

    def __init__(self, invariant: str, violation: float | None = None,
                 detail: str = ""):
        self.invariant = invariant
        self.violation = violation
        msg = f"invariant violated: {invariant}"
        if violation is not None:
            msg += f" (violation {violation:.3e})"
        if detail:
            msg += f" — {detail}"
        super().__init__(msg)


class GuardRefusal(ProjconstError):
    """A request was refused because it exceeds a hard size guard."""

    def __init__(self, message: str, candidates: int | None = None):
        self.candidates = candidates
        super().__init__(message)


class ResourceExhausted(ProjconstError):
    """A bounded scan or cap was exhausted before finding a result."""

    def __init__(self, message: str, best_q: int | None = None,
                 best_err: float | None = None):
        self.best_q = best_q
        self.best_err = best_err
        super().__init__(message)


class NumericalError(ProjconstError):
    """An iterative numerical routine failed to converge or lost accuracy."""


class WitnessNormalizationError(ProjconstError):
    """A trace-duality witness fails the unit nuclear-norm requirement."""


class WitnessConstraintError(ProjconstError):
    """A trace-duality witness fails the commutation constraint AP = PAP."""
