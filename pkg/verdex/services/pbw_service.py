from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Union

from verdex.core.constants import PBW_CACHE_LIMIT
from verdex.models.lie import LieData
from verdex.models.state import Generator, PBWMonomial, State, StateSpace

ONE = Fraction(1)

Terms = tuple[tuple[PBWMonomial, Fraction], ...]
Bracket = tuple[tuple[tuple[Fraction, Generator], ...], Fraction]


@dataclass(frozen=True)
class VirasoroRules:
    """[L_m, L_n] = (m - n) L_{m+n} + delta_{m,-n} (m^3 - m)/12 C; L_n |0> = 0 for n >= -1."""

    label: str = "L"
    central_value: Fraction | None = None

    def is_creation(self, x: Generator) -> bool:
        return x.mode <= -2

    def bracket(self, x: Generator, y: Generator) -> Bracket:
        m, n = x.mode, y.mode
        linear = ((Fraction(m - n), Generator(self.label, m + n)),) if m != n else ()
        central = Fraction(m**3 - m, 12) if m + n == 0 else Fraction(0)
        return linear, central


@dataclass(frozen=True)
class AffineRules:
    """[a t^m, b t^n] = [a, b] t^{m+n} + m delta_{m,-n} (a|b) K; g[t] kills |0>."""

    lie: LieData
    central_value: Fraction | None = None

    def is_creation(self, x: Generator) -> bool:
        return x.mode <= -1

    def bracket(self, x: Generator, y: Generator) -> Bracket:
        m, n = x.mode, y.mode
        linear = tuple(
            (c, Generator(self.lie.labels[k], m + n, k)) for k, c in self.lie.bracket(x.index, y.index)
        )
        central = m * self.lie.pairing(x.index, y.index) if m + n == 0 else Fraction(0)
        return linear, central


PBWRules = Union[VirasoroRules, AffineRules]


def _add(total: dict[PBWMonomial, Fraction], monomial: PBWMonomial, value: Fraction) -> None:
    total[monomial] = total.get(monomial, Fraction(0)) + value


@lru_cache(maxsize=PBW_CACHE_LIMIT)
def act(rules: PBWRules, x: Generator, monomial: PBWMonomial) -> Terms:
    """x . monomial rewritten into canonical PBW form."""

    if not monomial.modes:
        if rules.is_creation(x):
            return ((PBWMonomial(monomial.central, (x,)), ONE),)
        return ()
    head = monomial.modes[0]
    if rules.is_creation(x) and x.key >= head.key:
        return ((PBWMonomial(monomial.central, (x,) + monomial.modes), ONE),)

    # x Y R = Y (x R) + [x, Y] R
    rest = PBWMonomial(monomial.central, monomial.modes[1:])
    total: dict[PBWMonomial, Fraction] = {}
    for inner, c in act(rules, x, rest):
        for outer, c2 in act(rules, head, inner):
            _add(total, outer, c * c2)
    linear, central = rules.bracket(x, head)
    for c, generator in linear:
        for outer, c2 in act(rules, generator, rest):
            _add(total, outer, c * c2)
    if central:
        if rules.central_value is None:
            _add(total, PBWMonomial(rest.central + 1, rest.modes), central)
        else:
            _add(total, rest, central * rules.central_value)
    return tuple(sorted(((m, c) for m, c in total.items() if c), key=lambda item: item[0].sort_key()))


def act_on_state(rules: PBWRules, x: Generator, v: State) -> State:
    return v.linear(lambda index: State(v.space, act(rules, x, index)))


def apply_word(rules: PBWRules, word: Sequence[Generator], monomial: PBWMonomial, space: StateSpace) -> State:
    """word[0] word[1] ... word[-1] applied to the monomial, rightmost letter first."""

    current = State.basis(space, monomial)
    for generator in reversed(word):
        current = act_on_state(rules, generator, current)
    return current


def central_multiple(rules: PBWRules, monomial: PBWMonomial, space: StateSpace) -> State:
    """The central element times the monomial."""

    if rules.central_value is None:
        return State.basis(space, PBWMonomial(monomial.central + 1, monomial.modes))
    return State.basis(space, monomial, rules.central_value)


def virasoro_translation(rules: VirasoroRules, v: State) -> State:
    return act_on_state(rules, Generator(rules.label, -1), v)


def affine_translation(rules: AffineRules, v: State) -> State:
    """The derivation e t^m -> -m e t^(m-1), extended to PBW words."""

    def on_monomial(monomial: PBWMonomial) -> State:
        pieces: list[tuple[int, State]] = []
        base = PBWMonomial(monomial.central, ())
        for position, generator in enumerate(monomial.modes):
            lowered = Generator(generator.label, generator.mode - 1, generator.index)
            word = monomial.modes[:position] + (lowered,) + monomial.modes[position + 1 :]
            pieces.append((-generator.mode, apply_word(rules, word, base, v.space)))
        return State.combine(v.space, pieces)

    return v.linear(on_monomial)
