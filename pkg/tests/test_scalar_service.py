from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from verdex.core.errors import ConfigurationError, InfiniteValuation, RingError
from verdex.models.scalar import BaseRing, NormCtx
from verdex.services.scalar_service import (
    factorial_valuation,
    gbinomial,
    norm,
    norm_exponent,
    padic_valuation,
    parity_sign,
    radius_bound_exponent,
    radius_exponent,
)

PRIMES = [2, 3, 5, 7]


def _legendre(n: int, p: int) -> int:
    total, power = 0, p
    while power <= n:
        total += n // power
        power *= p
    return total


def _digit_sum(n: int, p: int) -> int:
    total = 0
    while n:
        total += n % p
        n //= p
    return total


def test_padic_valuation_of_integers_and_fractions():
    assert padic_valuation(12, 2) == 2
    assert padic_valuation(Fraction(3, 4), 2) == -2
    assert padic_valuation(Fraction(9, 2), 3) == 2
    assert padic_valuation(7, 5) == 0


def test_valuation_of_zero_is_infinite():
    with pytest.raises(InfiniteValuation):
        padic_valuation(0, 3)


def test_norms():
    two = NormCtx.padic(2)
    assert norm(12, two) == Fraction(1, 4)
    assert norm(Fraction(3, 4), two) == 4
    assert norm(0, two) == 0
    assert norm(5, NormCtx.trivial()) == 1
    assert norm_exponent(0, NormCtx.trivial()) is None


@given(st.fractions(), st.fractions(), st.sampled_from(PRIMES))
def test_padic_norm_is_ultrametric(x, y, p):
    ctx = NormCtx.padic(p)
    assert norm(x + y, ctx) <= max(norm(x, ctx), norm(y, ctx))
    assert norm(x * y, ctx) == norm(x, ctx) * norm(y, ctx)


@pytest.mark.parametrize("p", PRIMES)
def test_factorial_valuation_matches_floor_sum(p):
    for n in range(2001):
        assert factorial_valuation(n, p) == _legendre(n, p)


@pytest.mark.parametrize("p", PRIMES)
def test_radius_bound_never_positive(p):
    ctx = NormCtx.padic(p)
    for n in range(501):
        exponent = radius_bound_exponent(n, ctx)
        assert exponent <= 0
        assert exponent == Fraction(-_digit_sum(n, p), p - 1)


def test_radius_exponent():
    assert radius_exponent(NormCtx.padic(3)) == Fraction(-1, 2)
    assert radius_exponent(NormCtx.trivial()) == 0
    assert radius_bound_exponent(40, NormCtx.trivial()) == 0


@settings(max_examples=200)
@given(st.integers(min_value=-30, max_value=30), st.integers(min_value=1, max_value=20))
def test_gbinomial_pascal_rule(m, i):
    assert gbinomial(m, i) == gbinomial(m - 1, i) + gbinomial(m - 1, i - 1)


def test_gbinomial_negative_upper():
    assert [gbinomial(-1, i) for i in range(5)] == [1, -1, 1, -1, 1]
    assert gbinomial(-2, 3) == -4
    assert gbinomial(3, 5) == 0


def test_parity_sign_stays_integral():
    assert parity_sign(-3) == -1
    assert parity_sign(-2) == 1
    assert isinstance(parity_sign(-1), int)


def test_base_ring_parsing_and_membership():
    ring = BaseRing.parse("Z[1/6]")
    assert ring.label == "Z[1/6]"
    assert ring.contains(Fraction(1, 4))
    assert not ring.contains(Fraction(1, 5))
    assert ring.is_invertible(3)
    assert not ring.is_invertible(5)
    assert BaseRing.parse("Q").contains(Fraction(1, 7))
    assert BaseRing.parse("Z").label == "Z"


def test_base_ring_rejects_outside_values():
    with pytest.raises(RingError):
        BaseRing.integers().require(Fraction(1, 2))
    with pytest.raises(ConfigurationError):
        BaseRing.parse("R")


def test_padic_context_needs_prime():
    with pytest.raises(ConfigurationError):
        NormCtx.padic(4)
