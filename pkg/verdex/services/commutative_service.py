from __future__ import annotations

import logging
from fractions import Fraction

from verdex.core.errors import ConfigurationError
from verdex.models.algebra import VertexAlgebra
from verdex.models.field import ModeField
from verdex.models.scalar import BaseRing, NormCtx
from verdex.models.state import BosonMonomial, SpaceTag, State, StateSpace
from verdex.services.field_service import constant_field, identity_field
from verdex.services.scalar_service import gbinomial
from verdex.services.state_service import state_norm


logger = logging.getLogger(__name__)


def _power(k: int) -> BosonMonomial:
    return BosonMonomial(((1, k),)) if k else BosonMonomial()


def _degree(index: BosonMonomial) -> int:
    return index.power(1)


def commutative_power_series(
    ctx: NormCtx,
    radius: Fraction,
    truncation: int = 12,
    ring: BaseRing | None = None,
) -> VertexAlgebra:
    """K{t/r} with Y(a, z) b = (e^{zT} a) b and T = d/dt; probes stop at degree ``truncation``."""

    radius = Fraction(radius)
    if radius <= 0:
        raise ConfigurationError("the radius of K{t/r} must be positive")
    space = StateSpace(SpaceTag.POWER_SERIES, symbol="t", indexed=False, weight=radius, name=f"r={radius}")

    def t_mode(n: int, index: BosonMonomial) -> State:
        if n == -1:
            return State.basis(space, _power(_degree(index) + 1))
        if n == -2:
            return State.basis(space, index)
        return State.zero(space)

    t = ModeField("t", space, t_mode, lambda index: 0)

    def divided(u: State, m: int) -> State:
        def on_monomial(index: BosonMonomial) -> State:
            k = _degree(index)
            if m > k:
                return State.zero(space)
            return State.basis(space, _power(k - m), gbinomial(k, m))

        return u.linear(on_monomial)

    def basis(grade: int) -> list[BosonMonomial]:
        return [_power(grade)] if grade <= truncation else []

    V = VertexAlgebra(
        name=f"commutativePS[r={radius}]",
        space=space,
        ctx=ctx,
        ring=ring or BaseRing.integers(),
        vacuum=State.basis(space, BosonMonomial()),
        translation=lambda v: divided(v, 1),
        generators={"t": t},
        identity=identity_field(space),
        creation_word=lambda index: (Fraction(1), (("t", -1),) * _degree(index)),
        basis_of_grade=basis,
        divided_translation=divided,
        details={"radius": radius, "truncation": truncation},
    )
    logger.info("built K{t/r} with r = %s, truncated at degree %d", radius, truncation)
    return V


def divided_translation_norms(V: VertexAlgebra, n_max: int) -> list[tuple[int, Fraction]]:
    """Windowed operator norms of T^(n) over the probe monomials, n = 0..n_max."""

    truncation = V.details.get("truncation", n_max)
    probes = V.probes(truncation)
    rows = []
    for n in range(n_max + 1):
        best = Fraction(0)
        for v in probes:
            image = V.divided_translation(v, n) if V.divided_translation else None
            if image is None:
                continue
            ratio = state_norm(image, V.ctx) / state_norm(v, V.ctx)
            best = max(best, ratio)
        rows.append((n, best))
    return rows


def diagonal_algebra(ctx: NormCtx, truncation: int = 8, p: int | None = None, ring: BaseRing | None = None) -> VertexAlgebra:
    """Zero-translation algebra on span{x^n}, vacuum sum p^n x^n, fields phi_n = projection onto x^n.

    Every phi_n has norm 1 while fs(phi_n) = p^n x^n, so fs is not admissible.
    """

    p = p or ctx.p
    if p is None:
        raise ConfigurationError("the diagonal algebra needs a prime (a p-adic context or an explicit p)")
    space = StateSpace(SpaceTag.DIAGONAL, symbol="x", indexed=False, name=f"p={p}")

    def projection(n: int) -> ModeField:
        def operator(index: BosonMonomial) -> State:
            return State.basis(space, index) if _degree(index) == n else State.zero(space)

        return constant_field(f"phi{n}", space, operator)

    generators = {f"phi{n}": projection(n) for n in range(truncation + 1)}
    vacuum = State(space, {_power(n): Fraction(p) ** n for n in range(truncation + 1)})

    def basis(grade: int) -> list[BosonMonomial]:
        return [_power(grade)] if grade <= truncation else []

    V = VertexAlgebra(
        name=f"diagonal[p={p}]",
        space=space,
        ctx=ctx,
        ring=ring or BaseRing.localized(p),
        vacuum=vacuum,
        translation=lambda v: State.zero(space),
        generators=generators,
        identity=identity_field(space),
        creation_word=lambda index: (Fraction(p) ** _degree(index), ((f"phi{_degree(index)}", -1),)),
        basis_of_grade=basis,
        divided_translation=lambda u, m: u if m == 0 else State.zero(space),
        witness_fields=lambda: list(generators.values()),
        details={"truncation": truncation, "p": p},
    )
    logger.info("built the diagonal algebra with p = %d, truncated at degree %d", p, truncation)
    return V
