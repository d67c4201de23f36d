"""Exception types shared across the package.

Everything derives from CarlitzError so callers (CLI, service) can map
failures to exit codes / HTTP statuses in one place.
"""


class CarlitzError(Exception):
    """Base class for all domain errors raised by this package."""


class DivisionByIndistinguishableZero(CarlitzError):
    """Divisor has no nonzero coefficient below its precision."""


class NotAQthPower(CarlitzError):
    """Inverse twist requested for an element outside the q-th power image."""


class NotAUnit(CarlitzError):
    """Series fails the constant-term dominance test for unit inversion."""


class OutsideUnitDisk(CarlitzError):
    """Evaluation point has norm > 1 but the series carries no tail bound."""


class OutsideLogDomain(CarlitzError):
    """Argument norm is >= |theta|^(q/(q-1)), outside log convergence."""


class InsufficientTruncation(CarlitzError):
    """Tail certificate cannot certify any digits at this truncation order."""


class IndeterminateValuation(CarlitzError):
    """A hull-relevant coefficient is zero at its precision."""


class ExtensionRequired(CarlitzError):
    """Root lives in a proper extension of the working field.

    ``kind`` is "slope" (non-integral valuation) or "residual" (residual
    polynomial does not split over the residue field).
    """

    def __init__(self, kind: str, message: str = ""):
        self.kind = kind
        super().__init__(message or f"extension required ({kind})")


class NonInvertible(CarlitzError):
    """Matrix inverse does not exist in the supported ring."""


class UnderdeterminedSystem(CarlitzError):
    """Relation search has fewer usable equations than unknowns."""


class NotCertified(CarlitzError):
    """Operation requires a relation that passed certification."""


class GammaExtractionFailed(CarlitzError):
    """Relation coefficients cannot be scaled into F_q(t) slots."""


class ExprSyntaxError(CarlitzError):
    """Expression parse failure; ``position`` is a 0-based offset."""

    def __init__(self, message: str, position: int):
        self.position = position
        super().__init__(f"{message} (at position {position})")


class ContextError(CarlitzError):
    """`t` used in a field-element context."""
