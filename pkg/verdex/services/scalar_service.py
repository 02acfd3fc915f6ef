from __future__ import annotations

import math
from fractions import Fraction

from sympy import multiplicity
from sympy.ntheory import digits

from verdex.core.errors import InfiniteValuation, VerdexError
from verdex.models.scalar import NormCtx


def as_scalar(value: Fraction | int | str) -> Fraction:
    return value if isinstance(value, Fraction) else Fraction(value)


def padic_valuation(q: Fraction | int, p: int) -> int:
    q = as_scalar(q)
    if q == 0:
        raise InfiniteValuation("the valuation of 0 is infinite")
    return multiplicity(p, abs(q.numerator)) - multiplicity(p, q.denominator)


def norm_exponent(q: Fraction | int, ctx: NormCtx) -> int | None:
    """log_p |q| (0 for the trivial norm); ``None`` stands for |0| = 0."""

    q = as_scalar(q)
    if q == 0:
        return None
    if not ctx.is_padic:
        return 0
    return -padic_valuation(q, ctx.p)


def norm(q: Fraction | int, ctx: NormCtx) -> Fraction:
    exponent = norm_exponent(q, ctx)
    if exponent is None:
        return Fraction(0)
    if not ctx.is_padic:
        return Fraction(1)
    return Fraction(ctx.p) ** exponent


def factorial_valuation(n: int, p: int) -> int:
    """v_p(n!) by Legendre's digit-sum formula."""

    if n < 0:
        raise VerdexError("factorial_valuation needs n >= 0")
    if n == 0:
        return 0
    digit_sum = sum(digits(n, p)[1:])
    return (n - digit_sum) // (p - 1)


def gbinomial(m: int, i: int) -> int:
    """m(m-1)...(m-i+1)/i! for any integer m."""

    if i < 0:
        raise VerdexError("gbinomial needs a nonnegative lower index")
    if m >= 0:
        return math.comb(m, i)
    return (-1) ** i * math.comb(i - m - 1, i)


def parity_sign(k: int) -> int:
    """(-1)**k kept integral for negative k."""

    return -1 if k % 2 else 1


def radius(ctx: NormCtx) -> float:
    if not ctx.is_padic:
        return 1.0
    return float(ctx.p) ** (-1.0 / (ctx.p - 1))


def radius_exponent(ctx: NormCtx) -> Fraction:
    """log_p r_p, i.e. -1/(p-1); 0 for the trivial norm."""

    if not ctx.is_padic:
        return Fraction(0)
    return Fraction(-1, ctx.p - 1)


def radius_bound_exponent(n: int, ctx: NormCtx) -> Fraction:
    """log_p of r_p^n / |n!|; never positive."""

    if not ctx.is_padic:
        return Fraction(0)
    return n * radius_exponent(ctx) + factorial_valuation(n, ctx.p)
