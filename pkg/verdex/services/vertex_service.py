from __future__ import annotations

import logging
import math
from collections.abc import Callable, Iterable, Sequence
from fractions import Fraction

from verdex.core.config import settings
from verdex.core.errors import (
    AxiomViolation,
    OutsideReachableSpan,
    QuotientCollapsed,
    RingError,
    TorsionError,
    VerdexError,
    WindowError,
)
from verdex.models.algebra import (
    AdmissibilityRow,
    ClosureEntry,
    ClosureTable,
    IdentityReport,
    Quantity,
    VertexAlgebra,
    Verdict,
)
from verdex.models.field import ModeField
from verdex.models.series import UniSeries, Window
from verdex.models.state import BasisIndex, Parity, State
from verdex.services.field_service import (
    field_combination,
    locality_order,
    nproduct,
    translation_defect,
    windowed_field_norm,
)
from verdex.services.scalar_service import norm
from verdex.services.state_service import state_norm


logger = logging.getLogger(__name__)


def fs(a: ModeField, V: VertexAlgebra) -> State:
    """a_(-1)|0>."""

    return a.apply(-1, V.vacuum)


def state_parity(v: State) -> Parity:
    if not v:
        return Parity.EVEN
    parity = v.parity
    if parity is None:
        raise VerdexError(f"state {v} mixes even and odd terms")
    return parity


def monomial_field(V: VertexAlgebra, index: BasisIndex) -> tuple[Fraction, ModeField]:
    """(scale, field) with fs(field) = scale * monomial, built from generator products."""

    known = V.known_field(index)
    if known is not None:
        return known
    scale, word = V.creation_word(index)
    built = V.identity
    for label, n in reversed(word):
        built = nproduct(V.generator(label), built, n)
    V.remember_field(index, Fraction(scale), built)
    return Fraction(scale), built


def state_field(V: VertexAlgebra, a: State) -> ModeField:
    """Y(a, z), the field whose fs-image is a."""

    if a.space != V.space:
        raise VerdexError(f"state {a} does not belong to {V.name}")
    if a == V.vacuum:
        return V.identity
    terms: list[tuple[Fraction, ModeField]] = []
    for index, coefficient in a.items():
        scale, built = monomial_field(V, index)
        weight = coefficient / scale
        if not V.ring.contains(weight):
            raise OutsideReachableSpan(
                f"{a} is not reachable over {V.ring.label}: its term {State.basis(V.space, index)} "
                f"is {scale} times a generator product"
            )
        terms.append((weight, built))
    return field_combination(terms, V.space, label=a.render())


def translation_power(V: VertexAlgebra, u: State, m: int) -> State:
    for _ in range(m):
        u = V.translation(u)
    return u


def translation_divided(V: VertexAlgebra, u: State, m: int) -> State:
    """T^(m) u = T^m u / m!, computed in V tensor Q unless the algebra supplies it."""

    if V.divided_translation is not None:
        return V.divided_translation(u, m)
    return translation_power(V, u, m) / math.factorial(m)


def exp_zT(V: VertexAlgebra, a: State, window: Window) -> UniSeries:
    """e^{zT} a = Y(a, z)|0>, with n! T^(n) a = T^n a checked coefficientwise."""

    if window.lo < 0:
        raise WindowError("e^{zT} has only nonnegative powers of z")
    field = state_field(V, a)
    power = translation_power(V, a, window.lo)
    coeffs: dict[int, State] = {}
    for n in window:
        if n > window.lo:
            power = V.translation(power)
        readout = field.apply(-n - 1, V.vacuum)
        if readout * math.factorial(n) != power:
            raise TorsionError(f"{math.factorial(n)} T^({n}) a differs from T^{n} a for a = {a}")
        coeffs[n] = readout
    return UniSeries(coeffs, window, State.zero(V.space))


def vacuum_axiom_holds(V: VertexAlgebra, a: ModeField) -> bool:
    return all(not a.apply(n, V.vacuum) for n in range(0, max(a.ubound(V.vacuum), 0)))


def locality_probes(V: VertexAlgebra, probes: Iterable[State]) -> list[State]:
    """The vacuum followed by the remaining probes, without repeats."""

    states = [V.vacuum]
    for v in probes:
        if v not in states:
            states.append(v)
    return states


def validate_fields(
    V: VertexAlgebra,
    fields: Sequence[ModeField],
    against: Sequence[ModeField],
    probes: Sequence[State],
    *,
    nmax: int | None = None,
    margin: int | None = None,
) -> None:
    """Vacuum, translation covariance and locality (against ``against``) on the probes."""

    nmax = nmax or settings.nmax
    margin = margin or settings.window_margin
    window = Window(-(nmax + margin), margin)
    states = locality_probes(V, probes)
    for a in fields:
        if not vacuum_axiom_holds(V, a):
            raise AxiomViolation("vacuum axiom", f"{a.label}_(n)|0> != 0 for some n >= 0")
        if translation_defect(a, V.translation, probes, V.ctx):
            raise AxiomViolation("translation covariance", f"[T, {a.label}(z)] != d/dz {a.label}(z)")
        for b in against:
            report = locality_order(a, b, states, nmax, window, V.ctx)
            if report.order is None:
                raise AxiomViolation("locality", f"{a.label} and {b.label} not local up to N={nmax}")
    logger.debug("validated %d fields of %s", len(fields), V.name)


def validate_algebra(V: VertexAlgebra, grade_cap: int = 2) -> None:
    if V.translation(V.vacuum):
        raise AxiomViolation("T|0> = 0", f"T|0> = {V.translation(V.vacuum)}")
    probes = V.probes(grade_cap)
    generators = list(V.generators.values())
    validate_fields(V, generators, generators, probes)
    logger.info("%s passes vacuum, translation and locality checks on %d probes", V.name, len(probes))


def closure_generate(
    V: VertexAlgebra,
    depth: int,
    n_range: tuple[int, int],
    *,
    check: bool = True,
    probes: Sequence[State] | None = None,
) -> ClosureTable:
    """Iterated n-th products of the generators, deduplicated by their fs-images."""

    lo, hi = n_range
    if lo > hi:
        raise VerdexError(f"empty product range [{lo}, {hi}]")
    probes = list(probes) if probes is not None else V.probes(1)
    generators = list(V.generators.values())
    table = ClosureTable()

    def register(label: str, built: ModeField, level: int) -> str | None:
        state = fs(built, V)
        if not state:
            return None
        existing = table.by_state(state)
        if existing is not None:
            if label != existing.label and label not in existing.aliases:
                existing.aliases.append(label)
            return existing.label
        if check and level > 0:
            validate_fields(V, [built], generators, probes)
        table.entries[label] = ClosureEntry(label, state, built, level)
        return label

    register("I", V.identity, 0)
    for label, generator in V.generators.items():
        register(label, generator, 0)

    for level in range(1, depth + 1):
        current = list(table.entries.values())
        for left in current:
            for right in current:
                for n in range(lo, hi + 1):
                    key = (left.label, right.label, n)
                    if key in table.products:
                        continue
                    product = nproduct(left.field, right.field, n)
                    table.products[key] = register(product.label, product, level)
        logger.debug("closure of %s at depth %d: %d fields", V.name, level, len(table.entries))
    V.closure = table
    return table


def central_quotient(V: VertexAlgebra, value: Fraction | int) -> VertexAlgebra:
    value = Fraction(value)
    if V.quotient_builder is None:
        raise VerdexError(f"{V.name} has no central element to specialize")
    if not V.ring.contains(value):
        raise RingError(f"central value {value} is not in {V.ring.label}")
    if norm(value, V.ctx) <= 1:
        logger.info("central quotient of %s at %s", V.name, value)
        return V.quotient_builder(value)
    if V.ring.is_invertible(value):
        raise QuotientCollapsed(f"{value} is a unit of norm > 1, so the central ideal is everything")
    raise RingError(f"central value {value} has norm > 1 and is not invertible in {V.ring.label}")


def admissibility_probe(
    V: VertexAlgebra,
    grade_cap: int,
    fields: Sequence[ModeField] | None = None,
    mode_lo: int = -4,
) -> list[AdmissibilityRow]:
    """Windowed field norm against the norm of the fs-image, field by field."""

    if fields is None:
        if V.witness_fields is not None:
            fields = V.witness_fields()
        elif V.closure is not None:
            fields = [entry.field for entry in V.closure.entries.values()]
        else:
            fields = [V.identity, *V.generators.values()]
    probes = V.probes(grade_cap)
    if V.witness_probes is not None:
        probes.extend(v for v in V.witness_probes() if v not in probes)
    rows = []
    for a in fields:
        image = fs(a, V)
        if not image:
            continue
        rows.append(AdmissibilityRow(a.label, windowed_field_norm(a, probes, V.ctx, mode_lo), state_norm(image, V.ctx)))
    return rows


def _report(name: str, V: VertexAlgebra, params: dict, defect: Fraction, detail: str | None = None) -> IdentityReport:
    verdict = Verdict.EXACT_ZERO if not defect else Verdict.NONZERO
    return IdentityReport(name, V.name, params, defect, verdict, detail)


def check_homomorphism(
    source: VertexAlgebra,
    target: VertexAlgebra,
    phi: Callable[[State], State],
    states: Sequence[State],
    n_range: Iterable[int],
) -> IdentityReport:
    """phi(|0>) = |0>, phi T = T phi and phi(u_(n) v) = phi(u)_(n) phi(v) on the given states."""

    defect = state_norm(phi(source.vacuum) - target.vacuum, target.ctx)
    witness = "vacuum" if defect else None
    n_values = list(n_range)
    for u in states:
        gap = state_norm(phi(source.translation(u)) - target.translation(phi(u)), target.ctx)
        if gap > defect:
            defect, witness = gap, f"T({u})"
        left = state_field(source, u)
        right = state_field(target, phi(u))
        for v in states:
            image = phi(v)
            for n in n_values:
                gap = state_norm(phi(left.apply(n, v)) - right.apply(n, image), target.ctx)
                if gap > defect:
                    defect, witness = gap, f"({u})_({n})({v})"
    params = {"source": source.name, "target": target.name, "states": len(states)}
    return _report("homomorphism", target, params, defect, witness)


def product_norm_probe(
    V: VertexAlgebra,
    a: State,
    b: State,
    n_values: Iterable[int],
    grade_cap: int = 4,
) -> IdentityReport:
    """||a_(n) b|| against the windowed bound ||Y(a)|| * ||b||; a probe, never a certificate."""

    field = state_field(V, a)
    bound = windowed_field_norm(field, V.probes(grade_cap), V.ctx) * state_norm(b, V.ctx)
    worst = Fraction(0)
    for n in n_values:
        worst = max(worst, state_norm(field.apply(n, b), V.ctx))
    report = IdentityReport(
        "product_norm",
        V.name,
        {"a": a.render(), "b": b.render()},
        max(Fraction(0), worst - bound),
        Verdict.PROBE,
        "windowed operator norm is a lower bound; exceeding it refutes nothing",
        {"product": Quantity.exact(worst), "bound": Quantity.exact(bound)},
    )
    return report
