from __future__ import annotations

from fractions import Fraction
from itertools import product

from sympy.utilities.iterables import partitions

from verdex.core.errors import VerdexError
from verdex.models.scalar import NormCtx
from verdex.models.state import BosonMonomial, FermionMonomial, Generator, PBWMonomial, State
from verdex.services.scalar_service import norm, norm_exponent, padic_valuation


def state_norm(v: State, ctx: NormCtx) -> Fraction:
    """max |lambda| * weight^grade over the terms of v."""

    weight = v.space.weight
    best = Fraction(0)
    for index, coefficient in v.terms.items():
        value = norm(coefficient, ctx)
        if weight != 1:
            value *= weight ** index.grade
        if value > best:
            best = value
    return best


def _weight_exponent(weight: Fraction, ctx: NormCtx) -> int:
    if weight == 1:
        return 0
    if not ctx.is_padic:
        raise VerdexError("an exponent-scale norm needs a p-adic context when the basis is weighted")
    exponent = padic_valuation(weight, ctx.p)
    if Fraction(ctx.p) ** exponent != weight:
        raise VerdexError(f"weight {weight} is not a power of {ctx.p}")
    return exponent


def state_norm_exponent(v: State, ctx: NormCtx) -> int | None:
    """log_p of state_norm (0 for the trivial norm); ``None`` for the zero state."""

    if not v:
        return None
    shift = _weight_exponent(v.space.weight, ctx)
    return max(norm_exponent(coefficient, ctx) + shift * index.grade for index, coefficient in v.terms.items())


def state_grade(v: State) -> int:
    if not v:
        raise VerdexError("the zero state has no grade")
    return max(index.grade for index in v.terms)


def super_sign(monomial: FermionMonomial, i: int) -> int | None:
    """Koszul sign of moving xi_i to the front of the monomial; ``None`` if xi_i is absent."""

    if i not in monomial.indices:
        return None
    return -1 if monomial.indices.index(i) % 2 else 1


def wedge_sign(monomial: FermionMonomial, i: int) -> int | None:
    """Sign produced by xi_i ^ monomial; ``None`` when xi_i already occurs."""

    if i in monomial.indices:
        return None
    preceding = sum(1 for index in monomial.indices if index < i)
    return -1 if preceding % 2 else 1


def fermion_wedge(monomial: FermionMonomial, i: int) -> tuple[int, FermionMonomial] | None:
    sign = wedge_sign(monomial, i)
    if sign is None:
        return None
    return sign, FermionMonomial(tuple(sorted(monomial.indices + (i,))))


def fermion_derivative(monomial: FermionMonomial, i: int) -> tuple[int, FermionMonomial] | None:
    sign = super_sign(monomial, i)
    if sign is None:
        return None
    return sign, FermionMonomial(tuple(index for index in monomial.indices if index != i))


def canonical_fermion(indices: list[int] | tuple[int, ...]) -> tuple[int, FermionMonomial] | None:
    """Sort a wedge word, returning the permutation sign; ``None`` if an index repeats."""

    if len(set(indices)) != len(indices):
        return None
    word = list(indices)
    sign = 1
    for i in range(len(word)):
        for j in range(len(word) - 1 - i):
            if word[j] > word[j + 1]:
                word[j], word[j + 1] = word[j + 1], word[j]
                sign = -sign
    return sign, FermionMonomial(tuple(word))


def boson_multiply(monomial: BosonMonomial, var: int, times: int = 1) -> BosonMonomial:
    powers = monomial.as_dict()
    powers[var] = powers.get(var, 0) + times
    return BosonMonomial.of(powers)


def boson_derivative(monomial: BosonMonomial, var: int) -> tuple[int, BosonMonomial] | None:
    mult = monomial.power(var)
    if not mult:
        return None
    powers = monomial.as_dict()
    powers[var] = mult - 1
    return mult, BosonMonomial.of(powers)


def _restricted_partitions(total: int, *, minimum: int = 1, distinct: bool = False) -> list[dict[int, int]]:
    if total == 0:
        return [{}]
    found = []
    for parts in partitions(total):
        if min(parts) < minimum:
            continue
        if distinct and any(mult > 1 for mult in parts.values()):
            continue
        found.append(dict(parts))
    return found


def boson_basis(grade: int) -> list[BosonMonomial]:
    return sorted(
        (BosonMonomial.of(parts) for parts in _restricted_partitions(grade)),
        key=BosonMonomial.sort_key,
    )


def fermion_basis(grade: int) -> list[FermionMonomial]:
    return sorted(
        (FermionMonomial(tuple(sorted(parts))) for parts in _restricted_partitions(grade, distinct=True)),
        key=FermionMonomial.sort_key,
    )


def _word_from_parts(label: str, index: int, parts: dict[int, int]) -> list[Generator]:
    word: list[Generator] = []
    for depth, mult in parts.items():
        word.extend([Generator(label, -depth, index)] * mult)
    return word


def pbw_basis(grade: int, labels: tuple[str, ...], *, minimum_depth: int, central: int = 0) -> list[PBWMonomial]:
    """PBW monomials of the given grade built from generators label_i[-n], n >= minimum_depth."""

    found: list[PBWMonomial] = []
    colours = len(labels)
    for split in product(range(grade + 1), repeat=colours):
        if sum(split) != grade:
            continue
        choices = [_restricted_partitions(part, minimum=minimum_depth) for part in split]
        for combination in product(*choices):
            word: list[Generator] = []
            for index, parts in enumerate(combination):
                word.extend(_word_from_parts(labels[index], index, parts))
            word.sort(key=lambda generator: generator.key, reverse=True)
            found.append(PBWMonomial(central, tuple(word)))
    return sorted(found, key=PBWMonomial.sort_key)
