from __future__ import annotations

import enum
from collections.abc import Iterator, Mapping
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from verdex.core.errors import UnknownCoefficient, WindowError


@dataclass(frozen=True, slots=True)
class Window:
    """Half-open exponent range [lo, hi) on which coefficients are exact."""

    lo: int
    hi: int

    def __post_init__(self) -> None:
        if self.lo >= self.hi:
            raise WindowError(f"empty window [{self.lo}, {self.hi})")

    def __contains__(self, exponent: int) -> bool:
        return self.lo <= exponent < self.hi

    def __iter__(self) -> Iterator[int]:
        return iter(range(self.lo, self.hi))

    def __len__(self) -> int:
        return self.hi - self.lo

    def shift(self, k: int) -> "Window":
        return Window(self.lo + k, self.hi + k)

    def raise_lower(self, k: int) -> "Window":
        return Window(self.lo + k, self.hi)

    def extend_upper(self, k: int) -> "Window":
        return Window(self.lo, self.hi + k)


class Side(str, enum.Enum):
    ZW = "zw"
    WZ = "wz"
    DELTA = "delta"


class DecompositionStatus(str, enum.Enum):
    CLEAN = "clean"
    REMAINDER = "remainder"
    INCONCLUSIVE = "inconclusive"


def _prune(coeffs: Mapping[Any, Any]) -> dict[Any, Any]:
    return {key: value for key, value in coeffs.items() if value}


@dataclass(frozen=True)
class UniSeries:
    """Truncated Laurent series; outside ``window`` a coefficient is unknown unless ``complete``."""

    coeffs: Mapping[int, Any]
    window: Window
    zero: Any = Fraction(0)
    complete: bool = False
    variable: str = "z"

    def __post_init__(self) -> None:
        cleaned = _prune(self.coeffs)
        stray = [e for e in cleaned if e not in self.window]
        if stray:
            raise WindowError(f"coefficients at {sorted(stray)} lie outside {self.window}")
        object.__setattr__(self, "coeffs", cleaned)

    def known(self, exponent: int) -> bool:
        return self.complete or exponent in self.window

    def coefficient(self, exponent: int) -> Any:
        if not self.known(exponent):
            raise UnknownCoefficient(f"{self.variable}^{exponent} lies outside {self.window}")
        return self.coeffs.get(exponent, self.zero)

    def __bool__(self) -> bool:
        return bool(self.coeffs)


@dataclass(frozen=True)
class BiSeries:
    """Truncated series in z and w, exact on the rectangle ``window_z x window_w``."""

    coeffs: Mapping[tuple[int, int], Any]
    window_z: Window
    window_w: Window
    zero: Any = Fraction(0)
    complete: bool = False

    def __post_init__(self) -> None:
        cleaned = _prune(self.coeffs)
        stray = [key for key in cleaned if key[0] not in self.window_z or key[1] not in self.window_w]
        if stray:
            raise WindowError(f"coefficients at {sorted(stray)[:4]} lie outside the window rectangle")
        object.__setattr__(self, "coeffs", cleaned)

    def known(self, a: int, b: int) -> bool:
        return self.complete or (a in self.window_z and b in self.window_w)

    def coefficient(self, a: int, b: int) -> Any:
        if not self.known(a, b):
            raise UnknownCoefficient(f"z^{a} w^{b} lies outside the window rectangle")
        return self.coeffs.get((a, b), self.zero)

    def points(self) -> Iterator[tuple[int, int]]:
        for a in self.window_z:
            for b in self.window_w:
                yield a, b

    def __bool__(self) -> bool:
        return bool(self.coeffs)


@dataclass(frozen=True)
class PoleDecomposition:
    """h(z, w) + sum over the pole list of g_n(w) / (z - w)^(n+1)."""

    regular: BiSeries
    poles: tuple[tuple[int, UniSeries], ...] = ()


@dataclass(frozen=True)
class DecompositionResult:
    coefficients: tuple[UniSeries, ...]
    status: DecompositionStatus
    compared: int = 0
    norm: Fraction | None = None
    detail: str | None = None
    mismatches: tuple[tuple[int, int], ...] = field(default_factory=tuple)
