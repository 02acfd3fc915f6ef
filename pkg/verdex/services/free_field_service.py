from __future__ import annotations

import logging
from fractions import Fraction

from verdex.models.algebra import VertexAlgebra
from verdex.models.field import ModeField
from verdex.models.scalar import BaseRing, NormCtx
from verdex.models.state import BosonMonomial, FermionMonomial, Parity, SpaceTag, State, StateSpace
from verdex.services.field_service import field_derivative, identity_field
from verdex.services.state_service import (
    boson_basis,
    boson_derivative,
    boson_multiply,
    fermion_basis,
    fermion_derivative,
    fermion_wedge,
)


logger = logging.getLogger(__name__)

BOSON_SPACE = StateSpace(SpaceTag.BOSON, symbol="x")
BOSON_T_SPACE = StateSpace(SpaceTag.BOSON_T, symbol="y")
FERMION_SPACE = StateSpace(SpaceTag.FERMION, symbol="xi")


def _boson_bound(index: BosonMonomial) -> int:
    return index.max_var + 1 if index.powers else 0


def _boson_mode(space: StateSpace, n: int, index: BosonMonomial, *, weighted_annihilation: bool) -> State:
    if n > 0:
        found = boson_derivative(index, n)
        if found is None:
            return State.zero(space)
        mult, lowered = found
        return State.basis(space, lowered, mult * n if weighted_annihilation else mult)
    if n < 0:
        return State.basis(space, boson_multiply(index, -n), 1 if weighted_annihilation else -n)
    return State.zero(space)


def _boson_translation(space: StateSpace, shift: int):
    """sum_i (i - 1 + shift) v_i d/dv_(i-1), with shift 0 for x and 1 for y."""

    def on_monomial(index: BosonMonomial) -> State:
        pieces = []
        for var, mult in index.powers:
            lowered = boson_derivative(index, var)[1]
            pieces.append(((var + shift) * mult, State.basis(space, boson_multiply(lowered, var + 1))))
        return State.combine(space, pieces)

    return lambda v: v.linear(on_monomial)


def _boson_word(index: BosonMonomial, generator: str, *, weighted: bool):
    word: list[tuple[str, int]] = []
    scale = Fraction(1)
    for var, mult in index.powers:
        word.extend([(generator, -var)] * mult)
        if weighted:
            scale *= Fraction(var) ** mult
    return scale, tuple(word)


def free_boson(ctx: NormCtx, ring: BaseRing | None = None) -> VertexAlgebra:
    """a_(n) = n d/dx_n (n > 0), x_(-n) (n < 0), a_(0) = 0 on K[x_1, x_2, ...]."""

    space = BOSON_SPACE
    a = ModeField(
        "a",
        space,
        lambda n, index: _boson_mode(space, n, index, weighted_annihilation=True),
        _boson_bound,
    )
    V = VertexAlgebra(
        name="boson",
        space=space,
        ctx=ctx,
        ring=ring or BaseRing.integers(),
        vacuum=State.basis(space, BosonMonomial()),
        translation=_boson_translation(space, 0),
        generators={"a": a},
        identity=identity_field(space),
        creation_word=lambda index: _boson_word(index, "a", weighted=False),
        basis_of_grade=boson_basis,
    )
    logger.info("built free boson over %s (%s norm)", V.ring.label, ctx.label)
    return V


def free_boson_t(ctx: NormCtx, ring: BaseRing | None = None, witness_levels: int = 3) -> VertexAlgebra:
    """b_(n) = d/dy_n (n > 0), -n y_(-n) (n < 0), b_(0) = 0.

    Only scale * y^mu is reachable from b, with scale the product of the variable indices.
    """

    space = BOSON_T_SPACE
    b = ModeField(
        "b",
        space,
        lambda n, index: _boson_mode(space, n, index, weighted_annihilation=False),
        _boson_bound,
    )

    def witnesses() -> list[ModeField]:
        if not ctx.is_padic:
            return [field_derivative(b, m) for m in range(witness_levels + 1)]
        return [field_derivative(b, ctx.p**k - 1) for k in range(witness_levels + 1)]

    def witness_probes() -> list[State]:
        # b_(p^k) on y_(p^k) carries the unit binom(2p^k - 1, p^k - 1) of d^(p^k - 1) b
        base = ctx.p if ctx.is_padic else 2
        return [State.basis(space, BosonMonomial(((base**k, 1),))) for k in range(witness_levels + 1)]

    V = VertexAlgebra(
        name="bosonT",
        space=space,
        ctx=ctx,
        ring=ring or BaseRing.integers(),
        vacuum=State.basis(space, BosonMonomial()),
        translation=_boson_translation(space, 1),
        generators={"b": b},
        identity=identity_field(space),
        creation_word=lambda index: _boson_word(index, "b", weighted=True),
        basis_of_grade=boson_basis,
        witness_fields=witnesses,
        witness_probes=witness_probes,
    )
    logger.info("built B^t over %s (%s norm)", V.ring.label, ctx.label)
    return V


def boson_to_bosont(source: VertexAlgebra, target: VertexAlgebra):
    """x_i -> i y_i, extended multiplicatively."""

    def on_monomial(index: BosonMonomial) -> State:
        scale = Fraction(1)
        for var, mult in index.powers:
            scale *= Fraction(var) ** mult
        return State.basis(target.space, index, scale)

    return lambda v: v.linear(on_monomial, target.space)


def _fermion_mode(space: StateSpace, n: int, index: FermionMonomial) -> State:
    found = fermion_derivative(index, n + 1) if n >= 0 else fermion_wedge(index, -n)
    if found is None:
        return State.zero(space)
    sign, monomial = found
    return State.basis(space, monomial, sign)


def _fermion_translation(space: StateSpace):
    """sum_i i xi_(i+1) d/dxi_i."""

    def on_monomial(index: FermionMonomial) -> State:
        pieces = []
        for i in index.indices:
            sign, lowered = fermion_derivative(index, i)
            raised = fermion_wedge(lowered, i + 1)
            if raised is None:
                continue
            sign2, monomial = raised
            pieces.append((i * sign * sign2, State.basis(space, monomial)))
        return State.combine(space, pieces)

    return lambda v: v.linear(on_monomial)


def free_fermion(ctx: NormCtx, ring: BaseRing | None = None) -> VertexAlgebra:
    """phi_(n) = d/dxi_(n+1) (n >= 0), xi_(-n) ^ (n < 0) on the Grassmann algebra."""

    space = FERMION_SPACE
    phi = ModeField(
        "phi",
        space,
        lambda n, index: _fermion_mode(space, n, index),
        lambda index: index.max_index,
        Parity.ODD,
    )
    V = VertexAlgebra(
        name="fermion",
        space=space,
        ctx=ctx,
        ring=ring or BaseRing.integers(),
        vacuum=State.basis(space, FermionMonomial()),
        translation=_fermion_translation(space),
        generators={"phi": phi},
        identity=identity_field(space),
        creation_word=lambda index: (Fraction(1), tuple(("phi", -i) for i in index.indices)),
        basis_of_grade=fermion_basis,
    )
    logger.info("built free fermion over %s (%s norm)", V.ring.label, ctx.label)
    return V
