from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from verdex.core.constants import LAMBDA, MU
from verdex.models.state import State, StateSpace


def _power(symbol: str, n: int) -> str:
    if n == 0:
        return ""
    return symbol if n == 1 else f"{symbol}^{n}"


@dataclass(frozen=True)
class LambdaPolynomial:
    """sum over n of lambda^n * coeffs[n]."""

    space: StateSpace
    coeffs: dict[int, State]

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", {n: v for n, v in self.coeffs.items() if v})

    def coefficient(self, n: int) -> State:
        return self.coeffs.get(n, State.zero(self.space))

    @property
    def degree(self) -> int | None:
        return max(self.coeffs) if self.coeffs else None

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def render(self) -> str:
        if not self.coeffs:
            return "0"
        pieces = []
        for n in sorted(self.coeffs):
            power = _power(LAMBDA, n)
            state = self.coeffs[n].render()
            pieces.append(f"({state})" if not power else f"{power}·({state})")
        return " + ".join(pieces)


@dataclass(frozen=True)
class BivariateLambda:
    """sum over (i, j) of lambda^i mu^j * coeffs[(i, j)]."""

    space: StateSpace
    coeffs: dict[tuple[int, int], State]

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", {key: v for key, v in self.coeffs.items() if v})

    def render(self) -> str:
        if not self.coeffs:
            return "0"
        pieces = []
        for i, j in sorted(self.coeffs):
            monomial = "".join(part for part in (_power(LAMBDA, i), _power(MU, j)) if part)
            state = self.coeffs[(i, j)].render()
            pieces.append(f"({state})" if not monomial else f"{monomial}·({state})")
        return " + ".join(pieces)


@dataclass(frozen=True)
class RadiusTerm:
    n: int
    exponent: Fraction | None
    bound_exponent: Fraction

    @property
    def holds(self) -> bool:
        return self.bound_exponent <= 0
