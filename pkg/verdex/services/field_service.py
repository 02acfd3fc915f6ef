from __future__ import annotations

import logging
from collections.abc import Callable, Sequence
from fractions import Fraction

from verdex.core.errors import LocalityUnknown, ParityError, WindowError
from verdex.models.field import LocalityReport, ModeField
from verdex.models.scalar import NormCtx
from verdex.models.series import BiSeries, UniSeries, Window
from verdex.models.state import BasisIndex, Parity, State, StateSpace, koszul
from verdex.services.scalar_service import gbinomial, parity_sign
from verdex.services.series_service import mul_zw, series_norm
from verdex.services.state_service import state_norm


logger = logging.getLogger(__name__)

Operator = Callable[[State], State]


def _wrap_label(label: str) -> str:
    return f"({label})" if any(ch in label for ch in " _:+") else label


def identity_field(space: StateSpace) -> ModeField:
    def action(n: int, index: BasisIndex) -> State:
        return State.basis(space, index) if n == -1 else State.zero(space)

    return ModeField("I", space, action, lambda index: 0)


def constant_field(
    label: str,
    space: StateSpace,
    operator: Callable[[BasisIndex], State],
    parity: Parity = Parity.EVEN,
) -> ModeField:
    """A field independent of z: its only nonzero mode is (-1)."""

    def action(n: int, index: BasisIndex) -> State:
        return operator(index) if n == -1 else State.zero(space)

    return ModeField(label, space, action, lambda index: 0, parity)


def field_combination(terms: Sequence[tuple[Fraction | int, ModeField]], space: StateSpace, label: str | None = None) -> ModeField:
    live = [(Fraction(c), f) for c, f in terms if c]
    parities = {f.parity for _, f in live}
    if len(parities) > 1:
        raise ParityError("cannot add an even field to an odd one")
    parity = parities.pop() if parities else Parity.EVEN
    if len(live) == 1 and live[0][0] == 1 and label is None:
        return live[0][1]

    def action(n: int, index: BasisIndex) -> State:
        return State.combine(space, ((c, f.mode_on(n, index)) for c, f in live))

    def bound(index: BasisIndex) -> int:
        return max((f.bound_on(index) for _, f in live), default=0)

    if label is None:
        label = " + ".join(f"{c}*{_wrap_label(f.label)}" if c != 1 else f.label for c, f in live) or "0"
    return ModeField(label, space, action, bound, parity)


def apply_field(a: ModeField, v: State, window: Window) -> UniSeries:
    """a(z) v on the exponent window; z^e carries a_(-e-1) v."""

    limit = a.ubound(v)
    coeffs = {}
    for exponent in window:
        n = -exponent - 1
        if n < limit:
            coeffs[exponent] = a.apply(n, v)
    return UniSeries(coeffs, window, State.zero(a.space))


def field_derivative(a: ModeField, m: int) -> ModeField:
    """d^(m) a(z): its k-th mode is binom(m-k-1, m) a_(k-m)."""

    if m < 0:
        raise WindowError("field_derivative needs m >= 0")
    if m == 0:
        return a
    space = a.space

    def action(k: int, index: BasisIndex) -> State:
        weight = gbinomial(m - k - 1, m)
        if not weight:
            return State.zero(space)
        return a.mode_on(k - m, index) * weight

    def bound(index: BasisIndex) -> int:
        return a.bound_on(index) + m

    label = f"d{_wrap_label(a.label)}" if m == 1 else f"d^({m}){_wrap_label(a.label)}"
    return ModeField(label, space, action, bound, a.parity)


def normally_ordered(a: ModeField, b: ModeField, label: str | None = None) -> ModeField:
    """:a(z)b(z): = a(z)_+ b(z) + (-1)^{p(a)p(b)} b(z) a(z)_-."""

    space = a.space
    sign = koszul(a.parity, b.parity)

    def action(p: int, index: BasisIndex) -> State:
        pieces: list[tuple[int, State]] = []
        for m in range(p - b.bound_on(index), 0):
            inner = b.mode_on(p - 1 - m, index)
            if inner:
                pieces.append((1, a.apply(m, inner)))
        for m in range(0, a.bound_on(index)):
            inner = a.mode_on(m, index)
            if inner:
                pieces.append((sign, b.apply(p - 1 - m, inner)))
        return State.combine(space, pieces)

    def bound(index: BasisIndex) -> int:
        best = b.bound_on(index)
        for m in range(0, a.bound_on(index)):
            inner = a.mode_on(m, index)
            if inner:
                best = max(best, b.ubound(inner) + m + 1)
        return best

    label = label or f":{_wrap_label(a.label)}{_wrap_label(b.label)}:"
    return ModeField(label, space, action, bound, a.parity + b.parity)


def nproduct(a: ModeField, b: ModeField, n: int) -> ModeField:
    label = f"{_wrap_label(a.label)}_({n}){_wrap_label(b.label)}"
    if n < 0:
        return normally_ordered(field_derivative(a, -n - 1), b, label=label)

    space = a.space
    sign = koszul(a.parity, b.parity)
    weights = [(i, parity_sign(n - i) * gbinomial(n, i)) for i in range(n + 1)]

    def action(p: int, index: BasisIndex) -> State:
        pieces: list[tuple[int, State]] = []
        for i, weight in weights:
            q = p + n - i
            inner = b.mode_on(q, index)
            if inner:
                pieces.append((weight, a.apply(i, inner)))
            inner = a.mode_on(i, index)
            if inner:
                pieces.append((-sign * weight, b.apply(q, inner)))
        return State.combine(space, pieces)

    def bound(index: BasisIndex) -> int:
        best = b.bound_on(index)
        for i in range(0, min(n + 1, a.bound_on(index))):
            inner = a.mode_on(i, index)
            if inner:
                best = max(best, b.ubound(inner))
        return best

    return ModeField(label, space, action, bound, a.parity + b.parity)


def commutator(a: ModeField, b: ModeField, m: int, n: int, v: State) -> State:
    """[a_(m), b_(n)] v with the Koszul sign."""

    sign = koszul(a.parity, b.parity)
    return a.apply(m, b.apply(n, v)) - sign * b.apply(n, a.apply(m, v))


def commutator_series(a: ModeField, b: ModeField, v: State, window: Window) -> BiSeries:
    """[a(z), b(w)] v; the coefficient of z^e w^f is [a_(-e-1), b_(-f-1)] v."""

    sign = koszul(a.parity, b.parity)
    b_images = {f: b.apply(-f - 1, v) for f in window}
    a_images = {e: a.apply(-e - 1, v) for e in window}
    coeffs = {}
    for e in window:
        for f in window:
            value = a.apply(-e - 1, b_images[f]) - sign * b.apply(-f - 1, a_images[e])
            if value:
                coeffs[(e, f)] = value
    return BiSeries(coeffs, window, window, State.zero(a.space))


def locality_order(
    a: ModeField,
    b: ModeField,
    probes: Sequence[State],
    nmax: int,
    window: Window,
    ctx: NormCtx | None = None,
) -> LocalityReport:
    if not probes:
        raise LocalityUnknown("locality needs at least one probe state")
    if window.lo + nmax >= window.hi:
        raise WindowError(f"window {window} is too small to multiply by (z-w)^{nmax}")
    ctx = ctx or NormCtx.trivial()
    current = [commutator_series(a, b, v, window) for v in probes]
    defects: list[Fraction] = []
    for order in range(nmax + 1):
        defect = max(series_norm(series, ctx)[0] for series in current)
        defects.append(defect)
        if not defect:
            logger.debug("locality %s, %s: order %d", a.label, b.label, order)
            return LocalityReport(a.label, b.label, order, nmax, tuple(defects), len(probes))
        if order < nmax:
            current = [mul_zw(series, 1) for series in current]
    logger.info("locality %s, %s: no vanishing up to N=%d", a.label, b.label, nmax)
    return LocalityReport(a.label, b.label, None, nmax, tuple(defects), len(probes))


def translation_defect(
    a: ModeField,
    translation: Operator,
    probes: Sequence[State],
    ctx: NormCtx | None = None,
    depth: int = 4,
) -> Fraction:
    """max || [T, a_(n)] v + n a_(n-1) v || over probes and modes."""

    ctx = ctx or NormCtx.trivial()
    worst = Fraction(0)
    for v in probes:
        tv = translation(v)
        top = max(a.ubound(v), a.ubound(tv)) + 1
        for n in range(-depth, top):
            lhs = translation(a.apply(n, v)) - a.apply(n, tv)
            rhs = a.apply(n - 1, v) * (-n)
            worst = max(worst, state_norm(lhs - rhs, ctx))
    return worst


def mode_commutator_check(
    a: ModeField,
    b: ModeField,
    m: int,
    n: int,
    probes: Sequence[State],
    order: int | None = None,
    ctx: NormCtx | None = None,
    *,
    nmax: int = 12,
    window: Window | None = None,
) -> Fraction:
    """Defect of [a_(m), b_(n)] = sum_i binom(m, i) (a_(i)b)_(m+n-i) on the probes."""

    ctx = ctx or NormCtx.trivial()
    if order is None:
        report = locality_order(a, b, probes, nmax, window or Window(-nmax - 6, 6), ctx)
        if report.order is None:
            raise LocalityUnknown(f"no locality order for {a.label}, {b.label} up to {nmax}")
        order = report.order
    products = [(i, gbinomial(m, i), nproduct(a, b, i)) for i in range(order)]
    worst = Fraction(0)
    for v in probes:
        lhs = commutator(a, b, m, n, v)
        rhs = State.combine(a.space, ((weight, c.apply(m + n - i, v)) for i, weight, c in products))
        worst = max(worst, state_norm(lhs - rhs, ctx))
    return worst


def windowed_field_norm(a: ModeField, probes: Sequence[State], ctx: NormCtx, mode_lo: int = -4) -> Fraction:
    """max ||a_(n) v|| / ||v|| over probes and modes n in [mode_lo, ubound); a lower bound for ||a||."""

    best = Fraction(0)
    for v in probes:
        size = state_norm(v, ctx)
        if not size:
            continue
        for n in range(mode_lo, a.ubound(v)):
            ratio = state_norm(a.apply(n, v), ctx) / size
            if ratio > best:
                best = ratio
    return best
