from __future__ import annotations

import logging
import math
from fractions import Fraction

from verdex.core.errors import RingError, VerdexError
from verdex.models.algebra import IdentityReport, Quantity, VertexAlgebra, Verdict
from verdex.models.conformal import BivariateLambda, LambdaPolynomial, RadiusTerm
from verdex.models.state import State, koszul
from verdex.services.scalar_service import gbinomial, parity_sign, radius_bound_exponent
from verdex.services.state_service import state_norm, state_norm_exponent
from verdex.services.vertex_service import state_field, state_parity, translation_power


logger = logging.getLogger(__name__)


def products(V: VertexAlgebra, a: State, b: State) -> dict[int, State]:
    """a_(n) b for every n >= 0 where it can be nonzero."""

    field = state_field(V, a)
    return {n: field.apply(n, b) for n in range(max(field.ubound(b), 0))}


def _divided(V: VertexAlgebra, a: State, b: State) -> dict[int, State]:
    """a_(n) b / n! in V tensor Q."""

    return {n: value / math.factorial(n) for n, value in products(V, a, b).items() if value}


def lambda_bracket(V: VertexAlgebra, a: State, b: State) -> LambdaPolynomial:
    coeffs = _divided(V, a, b)
    for n, scaled in coeffs.items():
        if not all(V.ring.contains(c) for c in scaled.terms.values()):
            raise RingError(f"dividing a_({n}) b by {n}! leaves {V.ring.label}")
    return LambdaPolynomial(V.space, coeffs)


def _difference_norm(V: VertexAlgebra, left: dict, right: dict) -> Fraction:
    zero = State.zero(V.space)
    return max(
        (state_norm(left.get(key, zero) - right.get(key, zero), V.ctx) for key in set(left) | set(right)),
        default=Fraction(0),
    )


def _verdict(defect: Fraction) -> Verdict:
    return Verdict.EXACT_ZERO if not defect else Verdict.NONZERO


def check_sesquilinearity(V: VertexAlgebra, a: State, b: State) -> IdentityReport:
    """[Ta_lambda b] = -lambda [a_lambda b] and [a_lambda Tb] = (lambda + T)[a_lambda b]."""

    bracket = _divided(V, a, b)
    shifted = {n + 1: v for n, v in bracket.items()}
    first = _difference_norm(V, _divided(V, V.translation(a), b), {n: -v for n, v in shifted.items()})

    expected: dict[int, State] = dict(shifted)
    for n, v in bracket.items():
        expected[n] = expected.get(n, State.zero(V.space)) + V.translation(v)
    second = _difference_norm(V, _divided(V, a, V.translation(b)), expected)
    defect = max(first, second)
    params = {"a": a.render(), "b": b.render()}
    return IdentityReport("sesquilinearity", V.name, params, defect, _verdict(defect))


def check_lambda_skew(V: VertexAlgebra, a: State, b: State) -> IdentityReport:
    """[b_lambda a] = -(-1)^{p(a)p(b)} [a_{-lambda-T} b], expanding (-lambda-T)^n."""

    sign = koszul(state_parity(a), state_parity(b))
    expected: dict[int, State] = {}
    for n, x in _divided(V, a, b).items():
        for k in range(n + 1):
            term = translation_power(V, x, n - k) * (-sign * parity_sign(n) * gbinomial(n, k))
            expected[k] = expected.get(k, State.zero(V.space)) + term
    defect = _difference_norm(V, _divided(V, b, a), expected)
    params = {"a": a.render(), "b": b.render()}
    return IdentityReport("skew_symmetry", V.name, params, defect, _verdict(defect))


def jacobi_sides(V: VertexAlgebra, a: State, b: State, c: State) -> tuple[BivariateLambda, BivariateLambda]:
    """[a_lambda [b_mu c]] and [[a_lambda b]_{lambda+mu} c] + sign [b_mu [a_lambda c]].

    Nested brackets act on undivided products; the factorials are divided out afterwards.
    """

    sign = koszul(state_parity(a), state_parity(b))
    zero = State.zero(V.space)
    f = math.factorial

    left: dict[tuple[int, int], State] = {}
    for j, y in products(V, b, c).items():
        if not y:
            continue
        for i, z in products(V, a, y).items():
            left[(i, j)] = left.get((i, j), zero) + z / (f(i) * f(j))

    right: dict[tuple[int, int], State] = {}
    for n, x in products(V, a, b).items():
        if not x:
            continue
        for k, w in products(V, x, c).items():
            for l in range(k + 1):
                key = (n + l, k - l)
                right[key] = right.get(key, zero) + w * Fraction(gbinomial(k, l), f(n) * f(k))
    for i, u in products(V, a, c).items():
        if not u:
            continue
        for j, v in products(V, b, u).items():
            right[(i, j)] = right.get((i, j), zero) + v * Fraction(sign, f(i) * f(j))
    return BivariateLambda(V.space, left), BivariateLambda(V.space, right)


def check_jacobi(V: VertexAlgebra, a: State, b: State, c: State) -> IdentityReport:
    left, right = jacobi_sides(V, a, b, c)
    defect = _difference_norm(V, left.coeffs, right.coeffs)
    params = {"a": a.render(), "b": b.render(), "c": c.render()}
    return IdentityReport("jacobi", V.name, params, defect, _verdict(defect))


def check_conformal_axioms(
    V: VertexAlgebra, a: State, b: State, c: State
) -> tuple[IdentityReport, IdentityReport, IdentityReport]:
    return (
        check_sesquilinearity(V, a, b),
        check_lambda_skew(V, a, b),
        check_jacobi(V, a, b, c),
    )


def radius_certificate(V: VertexAlgebra, a: State, b: State) -> list[RadiusTerm]:
    """Exponent-scale bound log_p(||a_(n) b|| r_p^n / |n!|) for each n with a_(n) b != 0."""

    if not V.ctx.is_padic:
        raise VerdexError("radius certificates need a p-adic norm context")
    terms = []
    for n, value in products(V, a, b).items():
        bound = radius_bound_exponent(n, V.ctx)
        exponent = state_norm_exponent(value, V.ctx)
        terms.append(RadiusTerm(n, None if exponent is None else exponent + bound, bound))
    return terms


def radius_report(V: VertexAlgebra, a: State, b: State) -> IdentityReport:
    terms = radius_certificate(V, a, b)
    failing = [term.n for term in terms if not term.holds]
    values = {}
    for term in terms:
        values[f"n={term.n}"] = Quantity.exponent(term.exponent, V.ctx.p)
        values[f"bound n={term.n}"] = Quantity.real(float(V.ctx.p) ** float(term.bound_exponent))
    verdict = Verdict.CERTIFIED if not failing else Verdict.NONZERO
    detail = None if not failing else f"r_p^n/|n!| > 1 at n = {failing}"
    params = {"a": a.render(), "b": b.render()}
    return IdentityReport("radius", V.name, params, Fraction(0), verdict, detail, values)
