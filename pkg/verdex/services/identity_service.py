from __future__ import annotations

import logging
from collections.abc import Iterable, Sequence
from fractions import Fraction

from verdex.core.config import settings
from verdex.models.algebra import IdentityReport, Quantity, VertexAlgebra, Verdict
from verdex.models.field import ModeField
from verdex.models.series import Side, Window
from verdex.models.state import State, koszul
from verdex.services.field_service import (
    commutator,
    field_derivative,
    locality_order,
    mode_commutator_check,
    nproduct,
)
from verdex.services.scalar_service import gbinomial, parity_sign
from verdex.services.series_service import pole_coefficient
from verdex.services.state_service import state_norm
from verdex.services.vertex_service import locality_probes, state_field, state_parity, translation_divided


logger = logging.getLogger(__name__)


def _verdict(defect: Fraction) -> Verdict:
    return Verdict.EXACT_ZERO if not defect else Verdict.NONZERO


def _inconclusive(name: str, V: VertexAlgebra, params: dict, detail: str) -> IdentityReport:
    logger.info("%s on %s inconclusive: %s", name, V.name, detail)
    return IdentityReport(name, V.name, params, Fraction(0), Verdict.INCONCLUSIVE, detail)


def _span(limit: int, cap: int | None) -> int:
    """Number of j >= 0 below ``limit``, further capped when a binomial vanishes past ``cap``."""

    count = max(limit, 0)
    return min(count, cap + 1) if cap is not None and cap >= 0 else count


def check_borcherds(
    V: VertexAlgebra,
    a: State,
    b: State,
    c: State,
    m: int,
    n: int,
    k: int,
    depth_budget: int | None = None,
) -> IdentityReport:
    params = {"a": a.render(), "b": b.render(), "c": c.render(), "m": m, "n": n, "k": k}
    budget = depth_budget or settings.depth_budget
    Ya, Yb = state_field(V, a), state_field(V, b)
    sign = koszul(state_parity(a), state_parity(b))

    left_terms = _span(Ya.ubound(b) - n, m if m >= 0 else None)
    first_terms = _span(Yb.ubound(c) - k, n if n >= 0 else None)
    second_terms = _span(Ya.ubound(c) - m, n if n >= 0 else None)
    if left_terms + first_terms + second_terms > budget:
        return _inconclusive("borcherds", V, params, f"needs {left_terms + first_terms + second_terms} summands")

    pieces: list[tuple[int, State]] = []
    for j in range(left_terms):
        inner = Ya.apply(n + j, b)
        if inner:
            pieces.append((gbinomial(m, j), state_field(V, inner).apply(m + k - j, c)))
    for j in range(first_terms):
        pieces.append((-parity_sign(j) * gbinomial(n, j), Ya.apply(m + n - j, Yb.apply(k + j, c))))
    for j in range(second_terms):
        weight = parity_sign(j) * gbinomial(n, j) * parity_sign(n) * sign
        pieces.append((weight, Yb.apply(n + k - j, Ya.apply(m + j, c))))
    defect = state_norm(State.combine(V.space, pieces), V.ctx)
    return IdentityReport("borcherds", V.name, params, defect, _verdict(defect))


def check_skew(V: VertexAlgebra, a: State, b: State, window: Window) -> IdentityReport:
    """Y(a, z) b against e^{zT} Y(b, -z) a on the exponent window, mode by mode."""

    params = {"a": a.render(), "b": b.render(), "window": f"[{window.lo},{window.hi})"}
    Ya, Yb = state_field(V, a), state_field(V, b)
    sign = koszul(state_parity(a), state_parity(b))
    defect = Fraction(0)
    for exponent in window:
        n = -exponent - 1
        lhs = Ya.apply(n, b)
        terms = max(Yb.ubound(a) - n, 0)
        rhs = State.combine(
            V.space,
            ((-sign * parity_sign(m + n), translation_divided(V, Yb.apply(m + n, a), m)) for m in range(terms)),
        )
        defect = max(defect, state_norm(lhs - rhs, V.ctx))
    return IdentityReport("skew_symmetry", V.name, params, defect, _verdict(defect))


def check_skew_fields(
    V: VertexAlgebra,
    a: State,
    b: State,
    n: int,
    probes: Sequence[State],
    modes: Iterable[int],
) -> IdentityReport:
    """a(z)_(n) b(z) = -sum_m (-1)^{m+n} d^(m)(b(z)_(m+n) a(z)), compared mode by mode on probes."""

    params = {"a": a.render(), "b": b.render(), "n": n}
    Ya, Yb = state_field(V, a), state_field(V, b)
    nmax, margin = settings.nmax, settings.window_margin
    window = Window(-(nmax + margin), margin)
    report = locality_order(Yb, Ya, locality_probes(V, probes), nmax, window, V.ctx)
    if report.order is None:
        return _inconclusive("skew_fields", V, params, f"no locality order up to {nmax}")
    sign = koszul(Ya.parity, Yb.parity)
    lhs = nproduct(Ya, Yb, n)
    rhs_terms = [
        (-sign * parity_sign(m + n), field_derivative(nproduct(Yb, Ya, m + n), m))
        for m in range(max(report.order - n, 0))
    ]
    mode_list = list(modes)
    defect = Fraction(0)
    for v in probes:
        for p in mode_list:
            rhs = State.combine(V.space, ((weight, f.apply(p, v)) for weight, f in rhs_terms))
            defect = max(defect, state_norm(lhs.apply(p, v) - rhs, V.ctx))
    return IdentityReport("skew_fields", V.name, params, defect, _verdict(defect))


def t_derivation_check(V: VertexAlgebra, a: State, b: State, n: int) -> IdentityReport:
    """T(a_(n) b) = (Ta)_(n) b + a_(n)(Tb)."""

    params = {"a": a.render(), "b": b.render(), "n": n}
    Ya = state_field(V, a)
    lhs = V.translation(Ya.apply(n, b))
    rhs = state_field(V, V.translation(a)).apply(n, b) + Ya.apply(n, V.translation(b))
    defect = state_norm(lhs - rhs, V.ctx)
    return IdentityReport("t_derivation", V.name, params, defect, _verdict(defect))


def check_commutator(V: VertexAlgebra, a: State, b: State, c: State, m: int, n: int) -> IdentityReport:
    """[a_(m), b_(n)] c = sum_i binom(m, i) (a_(i) b)_(m+n-i) c."""

    params = {"a": a.render(), "b": b.render(), "c": c.render(), "m": m, "n": n}
    Ya, Yb = state_field(V, a), state_field(V, b)
    lhs = commutator(Ya, Yb, m, n, c)
    pieces = []
    for i in range(_span(Ya.ubound(b), m if m >= 0 else None)):
        inner = Ya.apply(i, b)
        if inner:
            pieces.append((gbinomial(m, i), state_field(V, inner).apply(m + n - i, c)))
    defect = state_norm(lhs - State.combine(V.space, pieces), V.ctx)
    return IdentityReport("commutator", V.name, params, defect, _verdict(defect))


def check_borcherds_fields(
    V: VertexAlgebra,
    a: State,
    b: State,
    c: State,
    m: int,
    n: int,
    k: int,
    probes: Sequence[State],
    modes: Iterable[int],
    depth_budget: int | None = None,
) -> IdentityReport:
    """The Borcherds identity with the three states replaced by their fields."""

    params = {"a": a.render(), "b": b.render(), "c": c.render(), "m": m, "n": n, "k": k}
    budget = depth_budget or settings.depth_budget
    nmax, margin = settings.nmax, settings.window_margin
    window = Window(-(nmax + margin), margin)
    Ya, Yb, Yc = state_field(V, a), state_field(V, b), state_field(V, c)
    states = locality_probes(V, probes)
    orders = {}
    for name, (x, y) in {"ab": (Ya, Yb), "bc": (Yb, Yc), "ac": (Ya, Yc)}.items():
        report = locality_order(x, y, states, nmax, window, V.ctx)
        if report.order is None:
            return _inconclusive("borcherds_fields", V, params, f"no locality order for {name} up to {nmax}")
        orders[name] = report.order
    sign = koszul(Ya.parity, Yb.parity)

    left_terms = _span(orders["ab"] - n, m if m >= 0 else None)
    first_terms = _span(orders["bc"] - k, n if n >= 0 else None)
    second_terms = _span(orders["ac"] - m, n if n >= 0 else None)
    if left_terms + first_terms + second_terms > budget:
        return _inconclusive("borcherds_fields", V, params, "summand budget exceeded")

    lhs = [(gbinomial(m, j), nproduct(nproduct(Ya, Yb, n + j), Yc, m + k - j)) for j in range(left_terms)]
    rhs = [(parity_sign(j) * gbinomial(n, j), nproduct(Ya, nproduct(Yb, Yc, k + j), m + n - j)) for j in range(first_terms)]
    rhs += [
        (-parity_sign(j + n) * sign * gbinomial(n, j), nproduct(Yb, nproduct(Ya, Yc, m + j), n + k - j))
        for j in range(second_terms)
    ]
    mode_list = list(modes)
    defect = Fraction(0)
    for v in probes:
        for p in mode_list:
            left = State.combine(V.space, ((w, f.apply(p, v)) for w, f in lhs))
            right = State.combine(V.space, ((w, f.apply(p, v)) for w, f in rhs))
            defect = max(defect, state_norm(left - right, V.ctx))
    return IdentityReport("borcherds_fields", V.name, params, defect, _verdict(defect))


def check_borcherds_bivariate(
    V: VertexAlgebra,
    a: State,
    b: State,
    n: int,
    c: State,
    window_z: Window,
    window_w: Window,
) -> IdentityReport:
    """Y(a,z)Y(b,w)(z-w)^n - Y(b,w)Y(a,z)(z-w)^n = sum_j Y(a_(n+j)b, w) d_w^(j) delta(z-w), applied to c.

    The left products are expanded in |z| > |w| and |w| > |z| respectively.
    """

    params = {"a": a.render(), "b": b.render(), "c": c.render(), "n": n}
    Ya, Yb = state_field(V, a), state_field(V, b)
    sign = koszul(state_parity(a), state_parity(b))
    top_b, top_a = Yb.ubound(c), Ya.ubound(c)
    products = []
    for j in range(max(Ya.ubound(b) - n, 0)):
        inner = Ya.apply(n + j, b)
        if inner:
            products.append((j, state_field(V, inner)))

    defect = Fraction(0)
    for A in window_z:
        for B in window_w:
            pieces: list[tuple[Fraction, State]] = []
            # z^alpha w^beta from (z-w)^n with alpha + beta = n; b acts first.
            beta = 0
            while True:
                q = beta - B - 1
                if q >= top_b or (n >= 0 and beta > n):
                    break
                weight = pole_coefficient(n, Side.ZW, n - beta, beta)
                if weight:
                    pieces.append((weight, Ya.apply(-(A - (n - beta)) - 1, Yb.apply(q, c))))
                beta += 1
            alpha = 0
            while True:
                p = alpha - A - 1
                if p >= top_a or (n >= 0 and alpha > n):
                    break
                weight = pole_coefficient(n, Side.WZ, alpha, n - alpha)
                if weight:
                    pieces.append((-sign * weight, Yb.apply(-(B - (n - alpha)) - 1, Ya.apply(p, c))))
                alpha += 1
            for j, field in products:
                weight = gbinomial(-A - 1, j)
                if weight:
                    pieces.append((-weight, field.apply(-(A + B + 1 + j) - 1, c)))
            defect = max(defect, state_norm(State.combine(V.space, pieces), V.ctx))
    return IdentityReport("borcherds_bivariate", V.name, params, defect, _verdict(defect))


def check_locality(
    V: VertexAlgebra,
    a: ModeField,
    b: ModeField,
    probes: Sequence[State],
    nmax: int | None = None,
    margin: int | None = None,
) -> IdentityReport:
    """Smallest N with (z-w)^N [a(z), b(w)] = 0 on the probes; inconclusive when none is found up to nmax."""

    nmax = nmax or settings.nmax
    margin = margin or settings.window_margin
    report = locality_order(a, b, probes, nmax, Window(-(nmax + margin), margin), V.ctx)
    params = {"a": a.label, "b": b.label, "nmax": nmax}
    values = {f"N={i}": Quantity.exact(defect) for i, defect in enumerate(report.defects)}
    if report.order is None:
        detail = f"(z-w)^N [a(z), b(w)] does not vanish for N <= {nmax}"
        logger.info("locality of %s, %s on %s inconclusive", a.label, b.label, V.name)
        return IdentityReport("locality", V.name, params, report.defects[-1], Verdict.INCONCLUSIVE, detail, values)
    values["order"] = Quantity.exact(report.order)
    return IdentityReport("locality", V.name, params, Fraction(0), Verdict.EXACT_ZERO, None, values)


def check_dong(
    V: VertexAlgebra,
    a: ModeField,
    b: ModeField,
    c: ModeField,
    n: int,
    probes: Sequence[State],
    modes: Iterable[int],
    nmax: int | None = None,
) -> IdentityReport:
    """a(z)_(n) b(z) is local with c(z), and its modes obey the commutator formula against c."""

    nmax = nmax or settings.nmax
    window = Window(-(nmax + settings.window_margin), settings.window_margin)
    product = nproduct(a, b, n)
    report = locality_order(product, c, probes, nmax, window, V.ctx)
    params = {"a": a.label, "b": b.label, "c": c.label, "n": n}
    if report.order is None:
        return _inconclusive("dong", V, params, f"no locality order for {product.label} and {c.label} up to {nmax}")
    mode_list = list(modes)
    defect = Fraction(0)
    for m in mode_list:
        for k in mode_list:
            defect = max(defect, mode_commutator_check(product, c, m, k, probes, report.order, V.ctx))
    values = {"order": Quantity.exact(report.order)}
    return IdentityReport("dong", V.name, params, defect, _verdict(defect), None, values)
