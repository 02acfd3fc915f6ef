from __future__ import annotations

import logging
from collections.abc import Sequence
from fractions import Fraction
from typing import Any

from verdex.core.errors import UnknownCoefficient, VerdexError, WindowError
from verdex.models.scalar import NormCtx
from verdex.models.series import (
    BiSeries,
    DecompositionResult,
    DecompositionStatus,
    PoleDecomposition,
    Side,
    UniSeries,
    Window,
)
from verdex.models.state import State
from verdex.services.scalar_service import gbinomial, norm, parity_sign
from verdex.services.state_service import state_norm


logger = logging.getLogger(__name__)


def pole_coefficient(n: int, side: Side, a: int, b: int) -> Fraction:
    """Coefficient of z^a w^b in the chosen expansion of (z - w)^n."""

    if a + b != n:
        return Fraction(0)
    if side is Side.DELTA:
        return pole_coefficient(n, Side.ZW, a, b) - pole_coefficient(n, Side.WZ, a, b)
    if side is Side.ZW:
        if b < 0:
            return Fraction(0)
        return Fraction(gbinomial(n, b) * parity_sign(b))
    if a < 0:
        return Fraction(0)
    return Fraction(parity_sign(n + a) * gbinomial(n, a))


def expand_pole(n: int, side: Side, window_z: Window, window_w: Window) -> BiSeries:
    coeffs = {}
    for a in window_z:
        b = n - a
        if b in window_w:
            coeffs[(a, b)] = pole_coefficient(n, side, a, b)
    complete = n >= 0 and (side is Side.DELTA or all(n - b in window_z and b in window_w for b in range(n + 1)))
    return BiSeries(coeffs, window_z, window_w, complete=complete)


def delta_derivative(i: int, window_z: Window, window_w: Window) -> BiSeries:
    """The i-th Hasse derivative in w of delta(z - w)."""

    if i < 0:
        raise VerdexError("delta_derivative needs i >= 0")
    return expand_pole(-i - 1, Side.DELTA, window_z, window_w)


def hasse_derivative(f: UniSeries | BiSeries, i: int, variable: str = "z") -> UniSeries | BiSeries:
    if i < 0:
        raise VerdexError("hasse_derivative needs i >= 0")
    if i == 0:
        return f
    if isinstance(f, UniSeries):
        coeffs = {n - i: gbinomial(n, i) * value for n, value in f.coeffs.items()}
        return UniSeries(coeffs, f.window.shift(-i), f.zero, f.complete, f.variable)
    if variable == "z":
        coeffs = {(a - i, b): gbinomial(a, i) * value for (a, b), value in f.coeffs.items()}
        return BiSeries(coeffs, f.window_z.shift(-i), f.window_w, f.zero, f.complete)
    if variable == "w":
        coeffs = {(a, b - i): gbinomial(b, i) * value for (a, b), value in f.coeffs.items()}
        return BiSeries(coeffs, f.window_z, f.window_w.shift(-i), f.zero, f.complete)
    raise VerdexError(f"unknown variable {variable!r}")


def residue_z(f: UniSeries | BiSeries) -> Any:
    if isinstance(f, UniSeries):
        return f.coefficient(-1)
    if not f.complete and -1 not in f.window_z:
        raise UnknownCoefficient(f"z^-1 lies outside {f.window_z}")
    coeffs = {b: value for (a, b), value in f.coeffs.items() if a == -1}
    return UniSeries(coeffs, f.window_w, f.zero, f.complete, "w")


def mul_zw(f: BiSeries, k: int) -> BiSeries:
    """(z - w)^k f, restricted to the rectangle where every coefficient is exact."""

    if k < 0:
        raise VerdexError("mul_zw needs k >= 0")
    if k == 0:
        return f
    if f.complete:
        window_z, window_w = f.window_z.extend_upper(k), f.window_w.extend_upper(k)
    else:
        window_z, window_w = f.window_z.raise_lower(k), f.window_w.raise_lower(k)
    weights = [gbinomial(k, j) * parity_sign(j) for j in range(k + 1)]
    out: dict[tuple[int, int], Any] = {}
    for (a, b), value in f.coeffs.items():
        for j, weight in enumerate(weights):
            point = (a + k - j, b + j)
            if point[0] not in window_z or point[1] not in window_w:
                continue
            term = weight * value
            out[point] = out[point] + term if point in out else term
    return BiSeries(out, window_z, window_w, f.zero, f.complete)


def delta_coefficient(gs: Sequence[UniSeries], a: int, b: int) -> Any:
    """Coefficient of z^a w^b in sum_i g_i(w) d_w^(i) delta(z - w)."""

    total = None
    for i, g in enumerate(gs):
        weight = gbinomial(-a - 1, i)
        if not weight:
            continue
        value = g.coefficient(a + b + 1 + i)
        if not value:
            continue
        term = weight * value
        total = term if total is None else total + term
    if total is None:
        return gs[0].zero if gs else Fraction(0)
    return total


def delta_combination(gs: Sequence[UniSeries], window_z: Window, window_w: Window) -> BiSeries:
    zero = gs[0].zero if gs else Fraction(0)
    coeffs = {}
    try:
        for a in window_z:
            for b in window_w:
                coeffs[(a, b)] = delta_coefficient(gs, a, b)
    except UnknownCoefficient as exc:
        raise WindowError(f"pole coefficients do not cover the requested rectangle: {exc}") from exc
    return BiSeries(coeffs, window_z, window_w, zero)


def delta_decompose(f: BiSeries, max_order: int) -> DecompositionResult:
    if max_order < 0:
        raise VerdexError("delta_decompose needs max_order >= 0")
    gs: list[UniSeries] = []
    for i in range(max_order + 1):
        try:
            gs.append(residue_z(mul_zw(f, i)))
        except (WindowError, UnknownCoefficient) as exc:
            logger.info("delta decomposition stopped at order %d: %s", i, exc)
            return DecompositionResult(tuple(gs), DecompositionStatus.INCONCLUSIVE, detail=str(exc))

    compared = 0
    mismatches: list[tuple[int, int]] = []
    for a, b in f.points():
        if not all(g.known(a + b + 1 + i) for i, g in enumerate(gs)):
            continue
        compared += 1
        if delta_coefficient(gs, a, b) != f.coefficient(a, b):
            mismatches.append((a, b))
    if not compared:
        return DecompositionResult(
            tuple(gs), DecompositionStatus.INCONCLUSIVE, detail="no coefficient of f could be reconstructed"
        )
    if mismatches:
        return DecompositionResult(
            tuple(gs),
            DecompositionStatus.REMAINDER,
            compared=compared,
            detail=f"{len(mismatches)} coefficients are not of delta form up to order {max_order}",
            mismatches=tuple(mismatches[:16]),
        )
    return DecompositionResult(tuple(gs), DecompositionStatus.CLEAN, compared=compared)


def decomposition_norm(result: DecompositionResult, ctx: NormCtx) -> Fraction | None:
    """max ||g_i||, the norm of f when the decomposition is clean."""

    if result.status is not DecompositionStatus.CLEAN:
        return None
    return max((series_norm(g, ctx)[0] for g in result.coefficients), default=Fraction(0))


def partial_fractions(d: PoleDecomposition, side: Side, window_z: Window, window_w: Window) -> BiSeries:
    if side is Side.DELTA:
        raise VerdexError("partial_fractions expands into the zw or wz domain")
    h = d.regular
    coeffs: dict[tuple[int, int], Any] = {}
    try:
        for a in window_z:
            for b in window_w:
                total = h.coefficient(a, b)
                for n, g in d.poles:
                    k = -n - 1 - a if side is Side.ZW else a
                    if k < 0:
                        continue
                    weight = pole_coefficient(-n - 1, side, a, -n - 1 - a)
                    value = g.coefficient(a + b + n + 1)
                    if weight and value:
                        total = total + weight * value
                coeffs[(a, b)] = total
    except UnknownCoefficient as exc:
        raise WindowError(f"pole decomposition does not cover the requested rectangle: {exc}") from exc
    return BiSeries(coeffs, window_z, window_w, h.zero, complete=h.complete and not d.poles)


def multiply(f: UniSeries, g: UniSeries) -> UniSeries:
    """Product of two polynomial (complete) series; at most one may carry state coefficients."""

    if not (f.complete and g.complete):
        raise WindowError("products of truncated series need polynomial (complete) factors")
    out: dict[int, Any] = {}
    for e1, c1 in f.coeffs.items():
        for e2, c2 in g.coeffs.items():
            term = c2 * c1 if isinstance(c1, State) else c1 * c2
            key = e1 + e2
            out[key] = out[key] + term if key in out else term
    window = Window(f.window.lo + g.window.lo, f.window.hi + g.window.hi - 1)
    zero = f.zero if isinstance(f.zero, State) else g.zero
    return UniSeries(out, window, zero, True, f.variable)


def coefficient_norm(value: Any, ctx: NormCtx) -> Fraction:
    if isinstance(value, State):
        return state_norm(value, ctx)
    return norm(value, ctx)


def series_norm(f: UniSeries | BiSeries, ctx: NormCtx) -> tuple[Fraction, bool]:
    """Max coefficient norm on the window, and whether it is the exact sup (finite support known)."""

    best = max((coefficient_norm(value, ctx) for value in f.coeffs.values()), default=Fraction(0))
    return best, f.complete


def to_text(f: UniSeries | BiSeries) -> str:
    lines = []
    if isinstance(f, UniSeries):
        for exponent in sorted(f.coeffs):
            lines.append(f"{exponent}: {f.coeffs[exponent]}")
    else:
        for a, b in sorted(f.coeffs):
            lines.append(f"{a},{b}: {f.coeffs[(a, b)]}")
    return "\n".join(lines)
