from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from fractions import Fraction

from sympy import isprime, primefactors

from verdex.core.errors import ConfigurationError, RingError

Scalar = Fraction

_RING_PATTERN = re.compile(r"^Z\[1/(\d+)\]$")


class NormKind(str, enum.Enum):
    TRIVIAL = "trivial"
    PADIC = "p-adic"


@dataclass(frozen=True, slots=True)
class NormCtx:
    """Trivial or p-adic absolute value on exact rationals."""

    kind: NormKind = NormKind.TRIVIAL
    p: int | None = None

    def __post_init__(self) -> None:
        if self.kind is NormKind.TRIVIAL and self.p is not None:
            raise ConfigurationError("trivial norm context takes no prime")
        if self.kind is NormKind.PADIC and (self.p is None or not isprime(self.p)):
            raise ConfigurationError(f"p-adic norm context needs a prime, got {self.p!r}")

    @classmethod
    def trivial(cls) -> "NormCtx":
        return cls(NormKind.TRIVIAL, None)

    @classmethod
    def padic(cls, p: int) -> "NormCtx":
        return cls(NormKind.PADIC, p)

    @property
    def is_padic(self) -> bool:
        return self.kind is NormKind.PADIC

    @property
    def label(self) -> str:
        return f"{self.p}-adic" if self.is_padic else "trivial"


@dataclass(frozen=True, slots=True)
class BaseRing:
    """Z localized at a set of primes; ``inverted=None`` stands for Q."""

    inverted: frozenset[int] | None = frozenset()

    @classmethod
    def integers(cls) -> "BaseRing":
        return cls(frozenset())

    @classmethod
    def rationals(cls) -> "BaseRing":
        return cls(None)

    @classmethod
    def localized(cls, n: int) -> "BaseRing":
        if n < 1:
            raise ConfigurationError("localization index must be a positive integer")
        return cls(frozenset(primefactors(n)))

    @classmethod
    def parse(cls, text: str) -> "BaseRing":
        cleaned = text.strip().replace(" ", "")
        if cleaned in {"Q", "QQ"}:
            return cls.rationals()
        if cleaned in {"Z", "ZZ"}:
            return cls.integers()
        match = _RING_PATTERN.match(cleaned)
        if match:
            return cls.localized(int(match.group(1)))
        raise ConfigurationError(f"unrecognised base ring {text!r}; use Z, Q or Z[1/N]")

    @property
    def label(self) -> str:
        if self.inverted is None:
            return "Q"
        if not self.inverted:
            return "Z"
        n = 1
        for prime in self.inverted:
            n *= prime
        return f"Z[1/{n}]"

    def _covers(self, n: int) -> bool:
        if self.inverted is None:
            return True
        return all(prime in self.inverted for prime in primefactors(abs(n)))

    def contains(self, q: Fraction | int) -> bool:
        return self._covers(Fraction(q).denominator)

    def is_invertible(self, q: Fraction | int) -> bool:
        q = Fraction(q)
        return q != 0 and self.contains(q) and self._covers(q.numerator)

    def require(self, q: Fraction | int) -> Fraction:
        q = Fraction(q)
        if not self.contains(q):
            raise RingError(f"{q} does not lie in {self.label}")
        return q
