from __future__ import annotations

import enum
import threading
from collections.abc import Callable
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from verdex.models.field import ModeField
from verdex.models.scalar import BaseRing, NormCtx
from verdex.models.state import BasisIndex, State, StateSpace

CreationWord = tuple[Fraction, tuple[tuple[str, int], ...]]


class Verdict(str, enum.Enum):
    EXACT_ZERO = "exact-zero"
    NONZERO = "nonzero"
    INCONCLUSIVE = "inconclusive"
    PROBE = "probe"
    CERTIFIED = "certified"


class QuantityKind(str, enum.Enum):
    EXACT = "exact_rational"
    EXPONENT = "exponent"
    REAL = "real"


@dataclass(frozen=True, slots=True)
class Quantity:
    kind: QuantityKind
    value: Fraction | float | None
    base: int | None = None

    @classmethod
    def exact(cls, value: Fraction | int) -> "Quantity":
        return cls(QuantityKind.EXACT, Fraction(value))

    @classmethod
    def exponent(cls, value: Fraction | int | None, base: int) -> "Quantity":
        return cls(QuantityKind.EXPONENT, None if value is None else Fraction(value), base)

    @classmethod
    def real(cls, value: float) -> "Quantity":
        return cls(QuantityKind.REAL, float(value))


@dataclass
class IdentityReport:
    identity: str
    algebra: str
    params: dict[str, Any]
    defect: Fraction
    verdict: Verdict
    detail: str | None = None
    values: dict[str, Quantity] = field(default_factory=dict)


@dataclass
class ClosureEntry:
    label: str
    state: State
    field: ModeField
    depth: int
    aliases: list[str] = field(default_factory=list)


@dataclass
class ClosureTable:
    entries: dict[str, ClosureEntry] = field(default_factory=dict)
    products: dict[tuple[str, str, int], str | None] = field(default_factory=dict)

    def by_state(self, state: State) -> ClosureEntry | None:
        for entry in self.entries.values():
            if entry.state == state:
                return entry
        return None

    def product(self, left: str, right: str, n: int) -> ClosureEntry | None:
        label = self.products.get((left, right, n))
        return self.entries[label] if label else None


@dataclass(frozen=True)
class AdmissibilityRow:
    field: str
    field_norm: Fraction
    fs_norm: Fraction

    @property
    def ratio(self) -> Fraction:
        return self.field_norm / self.fs_norm


@dataclass(eq=False)
class VertexAlgebra:
    """State space, vacuum, translation and generating fields of a vertex algebra.

    ``creation_word(index)`` returns (scale, word) with
    word[0] word[1] ... word[-1] |0> = scale * (basis monomial);
    each word letter is a (generator label, mode) pair.
    """

    name: str
    space: StateSpace
    ctx: NormCtx
    ring: BaseRing
    vacuum: State
    translation: Callable[[State], State]
    generators: dict[str, ModeField]
    identity: ModeField
    creation_word: Callable[[BasisIndex], CreationWord]
    basis_of_grade: Callable[[int], list[BasisIndex]]
    divided_translation: Callable[[State, int], State] | None = None
    witness_fields: Callable[[], list[ModeField]] | None = None
    witness_probes: Callable[[], list[State]] | None = None
    quotient_builder: Callable[[Fraction], "VertexAlgebra"] | None = None
    closure: ClosureTable | None = None
    details: dict[str, Any] = field(default_factory=dict)
    _fields: dict[BasisIndex, tuple[Fraction, ModeField]] = field(default_factory=dict, repr=False)
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    def probes(self, grade_cap: int) -> list[State]:
        states: list[State] = []
        for grade in range(grade_cap + 1):
            states.extend(State.basis(self.space, index) for index in self.basis_of_grade(grade))
        return states

    def generator(self, label: str) -> ModeField:
        if label == "I":
            return self.identity
        return self.generators[label]

    def remember_field(self, index: BasisIndex, scale: Fraction, built: ModeField) -> None:
        with self._lock:
            self._fields.setdefault(index, (scale, built))

    def known_field(self, index: BasisIndex) -> tuple[Fraction, ModeField] | None:
        with self._lock:
            return self._fields.get(index)
