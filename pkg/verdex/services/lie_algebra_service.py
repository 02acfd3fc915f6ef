from __future__ import annotations

import logging
from fractions import Fraction
from itertools import product

from sympy import Matrix

from verdex.core.errors import LieDataError, RingError
from verdex.models.algebra import VertexAlgebra
from verdex.models.field import ModeField
from verdex.models.lie import LieData
from verdex.models.scalar import BaseRing, NormCtx
from verdex.models.state import BosonMonomial, Generator, PBWMonomial, SpaceTag, State, StateSpace
from verdex.services.field_service import constant_field, identity_field
from verdex.services.pbw_service import (
    AffineRules,
    VirasoroRules,
    act,
    affine_translation,
    central_multiple,
    virasoro_translation,
)
from verdex.services.state_service import pbw_basis


logger = logging.getLogger(__name__)


def _pbw_word(index: PBWMonomial, central_label: str, shift: int) -> tuple[Fraction, tuple[tuple[str, int], ...]]:
    word = [(central_label, -1)] * index.central
    word.extend((generator.label, generator.mode + shift) for generator in index.modes)
    return Fraction(1), tuple(word)


def virasoro(
    ctx: NormCtx,
    ring: BaseRing | None = None,
    central_value: Fraction | None = None,
) -> VertexAlgebra:
    """Vacuum module of the Virasoro algebra; L(z) has modes L_(n) = L_(n-1), C is central."""

    ring = ring or BaseRing.localized(2)
    if not ring.is_invertible(2):
        raise RingError(f"the Virasoro vertex algebra needs 2 invertible; {ring.label} does not invert it")
    rules = VirasoroRules("L", central_value)
    space = StateSpace(SpaceTag.VIRASORO, central_symbol="C", central_value=central_value)

    def l_mode(n: int, index: PBWMonomial) -> State:
        return State(space, act(rules, Generator("L", n - 1), index))

    L = ModeField("L", space, l_mode, lambda index: index.grade + 2)
    C = constant_field("C", space, lambda index: central_multiple(rules, index, space))

    def basis(grade: int) -> list[PBWMonomial]:
        return pbw_basis(grade, ("L",), minimum_depth=2)

    V = VertexAlgebra(
        name="virasoro" if central_value is None else f"virasoro[c={central_value}]",
        space=space,
        ctx=ctx,
        ring=ring,
        vacuum=State.basis(space, PBWMonomial()),
        translation=lambda v: virasoro_translation(rules, v),
        generators={"L": L, "C": C},
        identity=identity_field(space),
        creation_word=lambda index: _pbw_word(index, "C", 1),
        basis_of_grade=basis,
        quotient_builder=None if central_value is not None else (lambda c: virasoro(ctx, ring, Fraction(c))),
        details={"central": "C", "central_value": central_value},
    )
    logger.info("built %s over %s (%s norm)", V.name, ring.label, ctx.label)
    return V


def validate_lie_data(lie: LieData) -> None:
    """Antisymmetry, Jacobi, symmetry, invariance and nondegeneracy of the form."""

    dim = lie.dimension
    c = lie.structure
    for i, j in product(range(dim), repeat=2):
        for k in range(dim):
            if c[i][j][k] != -c[j][i][k]:
                raise LieDataError("antisymmetry", f"[{lie.labels[i]}, {lie.labels[j]}] != -[{lie.labels[j]}, {lie.labels[i]}]")
        if lie.form[i][j] != lie.form[j][i]:
            raise LieDataError("form symmetry", f"({lie.labels[i]}|{lie.labels[j]}) != ({lie.labels[j]}|{lie.labels[i]})")

    def bracket_vec(x: list[Fraction], y: list[Fraction]) -> list[Fraction]:
        out = [Fraction(0)] * dim
        for i, j in product(range(dim), repeat=2):
            if x[i] and y[j]:
                for k in range(dim):
                    out[k] += x[i] * y[j] * c[i][j][k]
        return out

    basis = [[Fraction(int(i == j)) for j in range(dim)] for i in range(dim)]
    for i, j, k in product(range(dim), repeat=3):
        x, y, z = basis[i], basis[j], basis[k]
        total = [
            p + q + r
            for p, q, r in zip(
                bracket_vec(x, bracket_vec(y, z)),
                bracket_vec(y, bracket_vec(z, x)),
                bracket_vec(z, bracket_vec(x, y)),
            )
        ]
        if any(total):
            names = ", ".join(lie.labels[t] for t in (i, j, k))
            raise LieDataError("Jacobi identity", f"fails on ({names})")
        left = sum(c[i][j][t] * lie.form[t][k] for t in range(dim))
        right = sum(lie.form[i][t] * c[j][k][t] for t in range(dim))
        if left != right:
            names = ", ".join(lie.labels[t] for t in (i, j, k))
            raise LieDataError("invariance of the form", f"([x,y]|z) != (x|[y,z]) on ({names})")
    if Matrix(dim, dim, lambda i, j: lie.form[i][j]).det() == 0:
        raise LieDataError("nondegeneracy", "the bilinear form is degenerate")
    for row in c:
        for entry in row:
            for value in entry:
                if not lie.ring.contains(value):
                    raise LieDataError("ring", f"structure constant {value} is not in {lie.ring.label}")


def _ring_covers(outer: BaseRing, inner: BaseRing) -> bool:
    if outer.inverted is None:
        return True
    return inner.inverted is not None and inner.inverted <= outer.inverted


def affine(
    lie: LieData,
    ctx: NormCtx,
    ring: BaseRing | None = None,
    level: Fraction | None = None,
) -> VertexAlgebra:
    """Vacuum module of the affine algebra g[t, 1/t] + K with g[t] killing |0>."""

    validate_lie_data(lie)
    ring = ring or lie.ring
    if not _ring_covers(ring, lie.ring):
        raise RingError(f"{lie.name} is defined over {lie.ring.label}, which {ring.label} does not contain")
    rules = AffineRules(lie, level)
    space = StateSpace(SpaceTag.AFFINE, central_symbol="K", central_value=level, name=lie.name)

    generators: dict[str, ModeField] = {}
    for i, label in enumerate(lie.labels):
        def mode(n: int, index: PBWMonomial, label: str = label, i: int = i) -> State:
            return State(space, act(rules, Generator(label, n, i), index))

        generators[label] = ModeField(label, space, mode, lambda index: index.grade + 1)
    generators["K"] = constant_field("K", space, lambda index: central_multiple(rules, index, space))

    def basis(grade: int) -> list[PBWMonomial]:
        return pbw_basis(grade, lie.labels, minimum_depth=1)

    name = f"affine[{lie.name}]" if level is None else f"affine[{lie.name}, k={level}]"
    V = VertexAlgebra(
        name=name,
        space=space,
        ctx=ctx,
        ring=ring,
        vacuum=State.basis(space, PBWMonomial()),
        translation=lambda v: affine_translation(rules, v),
        generators=generators,
        identity=identity_field(space),
        creation_word=lambda index: _pbw_word(index, "K", 0),
        basis_of_grade=basis,
        quotient_builder=None if level is not None else (lambda k: affine(lie, ctx, ring, Fraction(k))),
        details={"central": "K", "central_value": level, "lie": lie.name},
    )
    logger.info("built %s over %s (%s norm)", name, ring.label, ctx.label)
    return V


def abelian_lie(rank: int = 1, name: str = "abelian") -> LieData:
    labels = ("a",) if rank == 1 else tuple(f"a{i + 1}" for i in range(rank))
    zero = tuple(tuple(tuple(Fraction(0) for _ in range(rank)) for _ in range(rank)) for _ in range(rank))
    form = tuple(tuple(Fraction(int(i == j)) for j in range(rank)) for i in range(rank))
    return LieData(name, labels, zero, form, BaseRing.integers())


def affine_to_boson(source: VertexAlgebra, target: VertexAlgebra):
    """a t^(-n) -> x_n on the level-1 quotient of the rank-one abelian affine algebra."""

    def on_monomial(index: PBWMonomial) -> State:
        powers: dict[int, int] = {}
        for generator in index.modes:
            powers[-generator.mode] = powers.get(-generator.mode, 0) + 1
        return State.basis(target.space, BosonMonomial.of(powers))

    return lambda v: v.linear(on_monomial, target.space)


def boson_to_affine(source: VertexAlgebra, target: VertexAlgebra, label: str = "a"):
    def on_monomial(index: BosonMonomial) -> State:
        modes = []
        for var, mult in reversed(index.powers):
            modes.extend([Generator(label, -var, 0)] * mult)
        return State.basis(target.space, PBWMonomial(0, tuple(modes)))

    return lambda v: v.linear(on_monomial, target.space)
