from __future__ import annotations


class VerdexError(ValueError):
    """Base class for every error raised by verdex services."""


class InfiniteValuation(VerdexError):
    """The valuation of zero was requested."""


class UnknownCoefficient(VerdexError):
    """A coefficient outside the validity window of a truncated series was requested."""


class WindowError(VerdexError):
    """A truncated computation has no exponent range on which it is exact."""


class RingError(VerdexError):
    """A scalar does not lie in (or is not invertible in) the declared base ring."""


class OutsideReachableSpan(VerdexError):
    """A state is not expressible through generator modes applied to the vacuum."""


class AxiomViolation(VerdexError):
    def __init__(self, axiom: str, witness: str) -> None:
        super().__init__(f"{axiom} fails: {witness}")
        self.axiom = axiom
        self.witness = witness


class TorsionError(VerdexError):
    """n! T^(n) a differs from T^n a."""


class QuotientCollapsed(VerdexError):
    """(C - c)V is the whole space, so the central quotient is zero."""


class LieDataError(VerdexError):
    def __init__(self, identity: str, detail: str) -> None:
        super().__init__(f"Lie data violates {identity}: {detail}")
        self.identity = identity


class LocalityUnknown(VerdexError):
    """A computation needs a locality order that was not supplied or found."""


class ParityError(VerdexError):
    """Fields or states of mixed parity were combined where a homogeneous one is required."""


class ExpressionError(VerdexError):
    def __init__(self, message: str, position: int) -> None:
        super().__init__(f"{message} (at position {position})")
        self.position = position


class ConfigurationError(VerdexError):
    """The run configuration cannot be satisfied."""
