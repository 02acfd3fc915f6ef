from __future__ import annotations

import threading
from collections.abc import Callable
from dataclasses import dataclass, field
from fractions import Fraction

from verdex.core.constants import MODE_CACHE_LIMIT
from verdex.models.state import BasisIndex, Parity, State, StateSpace

ModeAction = Callable[[int, BasisIndex], State]
ModeBound = Callable[[BasisIndex], int]


@dataclass(eq=False)
class ModeField:
    """A field a(z) = sum a_(n) z^(-n-1), given by its modes on basis monomials.

    ``bound(index)`` is a vanishing bound: a_(n) kills the monomial for n >= bound(index).
    Mode values are memoized per (n, monomial) behind a lock; at most ``cache_limit``
    entries are kept, oldest evicted first.
    """

    label: str
    space: StateSpace
    action: ModeAction
    bound: ModeBound
    parity: Parity = Parity.EVEN
    cache_limit: int = MODE_CACHE_LIMIT
    _cache: dict[tuple[int, BasisIndex], State] = field(default_factory=dict, repr=False)
    _bounds: dict[BasisIndex, int] = field(default_factory=dict, repr=False)
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    def _remember(self, memo: dict, key: object, value: object) -> None:
        with self._lock:
            if key not in memo and len(memo) >= self.cache_limit:
                del memo[next(iter(memo))]
            memo[key] = value

    def mode_on(self, n: int, index: BasisIndex) -> State:
        key = (n, index)
        with self._lock:
            cached = self._cache.get(key)
        if cached is not None:
            return cached
        if n >= self.bound_on(index):
            value = State.zero(self.space)
        else:
            value = self.action(n, index)
        self._remember(self._cache, key, value)
        return value

    def bound_on(self, index: BasisIndex) -> int:
        with self._lock:
            cached = self._bounds.get(index)
        if cached is not None:
            return cached
        value = self.bound(index)
        self._remember(self._bounds, index, value)
        return value

    def apply(self, n: int, v: State) -> State:
        """a_(n) v."""

        if not v:
            return State.zero(self.space)
        return v.linear(lambda index: self.mode_on(n, index))

    def ubound(self, v: State) -> int:
        """Smallest N (over the terms of v) with a_(n) v = 0 for all n >= N."""

        if not v:
            return 0
        return max(self.bound_on(index) for index in v.terms)

    def mode(self, n: int) -> Callable[[State], State]:
        return lambda v: self.apply(n, v)


@dataclass(frozen=True)
class LocalityReport:
    left: str
    right: str
    order: int | None
    nmax: int
    defects: tuple[Fraction, ...]
    probes: int

    @property
    def exceeded(self) -> bool:
        return self.order is None
