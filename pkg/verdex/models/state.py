from __future__ import annotations

import enum
from collections.abc import Callable, Iterable, Mapping
from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType
from typing import Union

from verdex.core.errors import VerdexError


class SpaceTag(str, enum.Enum):
    BOSON = "boson"
    BOSON_T = "bosonT"
    FERMION = "fermion"
    VIRASORO = "virasoro"
    AFFINE = "affine"
    POWER_SERIES = "commutativePS"
    DIAGONAL = "diagonal"


class Parity(str, enum.Enum):
    EVEN = "even"
    ODD = "odd"

    @property
    def bit(self) -> int:
        return 1 if self is Parity.ODD else 0

    @classmethod
    def from_bit(cls, bit: int) -> "Parity":
        return cls.ODD if bit % 2 else cls.EVEN

    def __add__(self, other: "Parity") -> "Parity":  # type: ignore[override]
        return Parity.from_bit(self.bit + other.bit)


def koszul(first: Parity, second: Parity) -> int:
    """(-1)^{p(a)p(b)}."""

    return -1 if first is Parity.ODD and second is Parity.ODD else 1


@dataclass(frozen=True, slots=True)
class BosonMonomial:
    """Commuting monomial x_{i1}^{m1} x_{i2}^{m2} ..., stored sorted by variable."""

    powers: tuple[tuple[int, int], ...] = ()

    def __post_init__(self) -> None:
        previous = 0
        for var, mult in self.powers:
            if var < 1 or mult < 1 or var <= previous:
                raise VerdexError(f"malformed boson monomial {self.powers!r}")
            previous = var

    @classmethod
    def of(cls, mapping: Mapping[int, int]) -> "BosonMonomial":
        return cls(tuple(sorted((var, mult) for var, mult in mapping.items() if mult)))

    @property
    def grade(self) -> int:
        return sum(var * mult for var, mult in self.powers)

    @property
    def degree(self) -> int:
        return sum(mult for _, mult in self.powers)

    @property
    def parity(self) -> Parity:
        return Parity.EVEN

    @property
    def max_var(self) -> int:
        return self.powers[-1][0] if self.powers else 0

    def power(self, var: int) -> int:
        for candidate, mult in self.powers:
            if candidate == var:
                return mult
        return 0

    def as_dict(self) -> dict[int, int]:
        return dict(self.powers)

    def sort_key(self) -> tuple:
        return (self.grade, self.powers)


@dataclass(frozen=True, slots=True)
class FermionMonomial:
    """Wedge product xi_{i1} ^ xi_{i2} ^ ... with strictly increasing indices."""

    indices: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        previous = 0
        for index in self.indices:
            if index <= previous:
                raise VerdexError(f"fermion indices must be positive and strictly increasing: {self.indices!r}")
            previous = index

    @property
    def grade(self) -> int:
        return sum(self.indices)

    @property
    def parity(self) -> Parity:
        return Parity.from_bit(len(self.indices))

    @property
    def max_index(self) -> int:
        return self.indices[-1] if self.indices else 0

    def sort_key(self) -> tuple:
        return (self.grade, len(self.indices), self.indices)


@dataclass(frozen=True, slots=True)
class Generator:
    """A loop-algebra generator such as L_n or e_i t^n."""

    label: str
    mode: int
    index: int = 0

    @property
    def key(self) -> tuple[int, int]:
        return (-self.mode, self.index)

    def render(self) -> str:
        return f"{self.label}[{self.mode}]"


@dataclass(frozen=True, slots=True)
class PBWMonomial:
    """central^k * Y1 Y2 ... Yr |0> with key(Y1) >= key(Y2) >= ..."""

    central: int = 0
    modes: tuple[Generator, ...] = ()

    def __post_init__(self) -> None:
        if self.central < 0:
            raise VerdexError("central power must be nonnegative")
        for left, right in zip(self.modes, self.modes[1:]):
            if left.key < right.key:
                raise VerdexError("PBW modes must be in descending canonical order")

    @property
    def grade(self) -> int:
        return -sum(generator.mode for generator in self.modes)

    @property
    def parity(self) -> Parity:
        return Parity.EVEN

    def sort_key(self) -> tuple:
        return (self.grade, len(self.modes), self.central, tuple(g.key for g in self.modes))


BasisIndex = Union[BosonMonomial, FermionMonomial, PBWMonomial]


@dataclass(frozen=True, slots=True)
class StateSpace:
    """Which distinguished basis a state is written in, plus rendering and norm data."""

    tag: SpaceTag
    symbol: str = "x"
    indexed: bool = True
    central_symbol: str | None = None
    central_value: Fraction | None = None
    weight: Fraction = Fraction(1)
    name: str = ""


def render_monomial(space: StateSpace, index: BasisIndex) -> str:
    if isinstance(index, BosonMonomial):
        if not index.powers:
            return "|0>" if space.indexed else "1"
        parts = []
        for var, mult in index.powers:
            name = f"{space.symbol}{var}" if space.indexed else space.symbol
            parts.append(name if mult == 1 else f"{name}^{mult}")
        return "*".join(parts)
    if isinstance(index, FermionMonomial):
        if not index.indices:
            return "|0>"
        return f"{space.symbol}[{','.join(str(i) for i in index.indices)}]"
    parts = []
    if index.central:
        symbol = space.central_symbol or "C"
        parts.append(symbol if index.central == 1 else f"{symbol}^{index.central}")
    run: list[Generator] = []
    for generator in index.modes + (None,):  # type: ignore[operator]
        if run and generator != run[0]:
            text = run[0].render()
            parts.append(text if len(run) == 1 else f"{text}^{len(run)}")
            run = []
        if generator is not None:
            run.append(generator)
    return "*".join(parts) if parts else "|0>"


Scalarish = Union[Fraction, int]


class State:
    """Finitely supported exact vector over the basis of one state space."""

    __slots__ = ("space", "_terms", "_hash")

    def __init__(
        self,
        space: StateSpace,
        terms: Mapping[BasisIndex, Scalarish] | Iterable[tuple[BasisIndex, Scalarish]] | None = None,
    ) -> None:
        self.space = space
        cleaned: dict[BasisIndex, Fraction] = {}
        if terms:
            items = terms.items() if isinstance(terms, Mapping) else terms
            for index, coefficient in items:
                value = coefficient if isinstance(coefficient, Fraction) else Fraction(coefficient)
                if value:
                    cleaned[index] = cleaned.get(index, Fraction(0)) + value
        self._terms = {index: value for index, value in cleaned.items() if value}
        self._hash: int | None = None

    @classmethod
    def _wrap(cls, space: StateSpace, terms: dict[BasisIndex, Fraction]) -> "State":
        state = cls.__new__(cls)
        state.space = space
        state._terms = {index: value for index, value in terms.items() if value}
        state._hash = None
        return state

    @classmethod
    def zero(cls, space: StateSpace) -> "State":
        return cls._wrap(space, {})

    @classmethod
    def basis(cls, space: StateSpace, index: BasisIndex, coefficient: Scalarish = 1) -> "State":
        return cls._wrap(space, {index: Fraction(coefficient)})

    @classmethod
    def combine(cls, space: StateSpace, pairs: Iterable[tuple[Scalarish, "State"]]) -> "State":
        """sum of c * v over the pairs."""

        total: dict[BasisIndex, Fraction] = {}
        for scalar, vector in pairs:
            if not scalar or not vector:
                continue
            vector._check_space(space)
            for index, value in vector._terms.items():
                total[index] = total.get(index, Fraction(0)) + scalar * value
        return cls._wrap(space, total)

    @property
    def terms(self) -> Mapping[BasisIndex, Fraction]:
        return MappingProxyType(self._terms)

    def items(self) -> list[tuple[BasisIndex, Fraction]]:
        return sorted(self._terms.items(), key=lambda item: item[0].sort_key())

    def coefficient(self, index: BasisIndex) -> Fraction:
        return self._terms.get(index, Fraction(0))

    @property
    def parity(self) -> Parity | None:
        """Common parity of the terms; ``None`` for mixed or zero states."""

        parities = {index.parity for index in self._terms}
        return parities.pop() if len(parities) == 1 else None

    def linear(self, action: Callable[[BasisIndex], "State"], target: StateSpace | None = None) -> "State":
        return State.combine(target or self.space, ((value, action(index)) for index, value in self._terms.items()))

    def _check_space(self, space: StateSpace) -> None:
        if self.space != space:
            raise VerdexError(f"cannot combine states of {self.space.tag.value} and {space.tag.value}")

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, State):
            return NotImplemented
        return self.space == other.space and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.space, frozenset(self._terms.items())))
        return self._hash

    def __add__(self, other: "State") -> "State":
        if not isinstance(other, State):
            return NotImplemented
        return State.combine(self.space, ((1, self), (1, other)))

    def __sub__(self, other: "State") -> "State":
        if not isinstance(other, State):
            return NotImplemented
        return State.combine(self.space, ((1, self), (-1, other)))

    def __neg__(self) -> "State":
        return State._wrap(self.space, {index: -value for index, value in self._terms.items()})

    def __mul__(self, scalar: Scalarish) -> "State":
        if not isinstance(scalar, (int, Fraction)):
            return NotImplemented
        if not scalar:
            return State.zero(self.space)
        return State._wrap(self.space, {index: value * scalar for index, value in self._terms.items()})

    __rmul__ = __mul__

    def __truediv__(self, scalar: Scalarish) -> "State":
        return self * (1 / Fraction(scalar))

    def render(self) -> str:
        if not self._terms:
            return "0"
        pieces: list[str] = []
        for index, value in self.items():
            monomial = render_monomial(self.space, index)
            if value == 1:
                text = monomial
            elif value == -1:
                text = f"-{monomial}"
            else:
                text = f"{value} * {monomial}"
            if not pieces:
                pieces.append(text)
            elif text.startswith("-"):
                pieces.append(f" - {text[1:]}")
            else:
                pieces.append(f" + {text}")
        return "".join(pieces)

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"State({self.space.tag.value}: {self.render()})"
