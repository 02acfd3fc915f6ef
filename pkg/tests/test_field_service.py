from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from verdex.core.constants import MODE_CACHE_LIMIT
from verdex.core.errors import ParityError
from verdex.models.field import ModeField
from verdex.models.series import Window
from verdex.models.state import PBWMonomial, State
from verdex.services.field_service import (
    commutator,
    field_combination,
    field_derivative,
    locality_order,
    nproduct,
)
from verdex.services.vertex_service import fs, translation_divided

WINDOW = Window(-12, 6)


def _order(V, left, right, grade_cap=2):
    a, b = V.generator(left), V.generator(right)
    return locality_order(a, b, V.probes(grade_cap), 6, WINDOW, V.ctx).order


def test_virasoro_products(virasoro_q):
    V = virasoro_q
    L = V.generator("L")
    state = fs(L, V)
    assert fs(nproduct(L, L, 3), V) == State.basis(V.space, PBWMonomial(1, ()), Fraction(1, 2))
    assert fs(nproduct(L, L, 3), V).render() == "1/2 * C"
    assert L.apply(1, state) == state * 2
    assert L.apply(0, state) == V.translation(state)
    for n in [2, 4, 5, 6, 7, 8]:
        assert not L.apply(n, state)


def test_quotient_specializes_the_central_charge(virasoro_half):
    V = virasoro_half
    L = V.generator("L")
    assert L.apply(3, fs(L, V)) == V.vacuum * Fraction(1, 4)


@pytest.mark.parametrize(
    "fixture, left, right, expected",
    [
        ("boson", "a", "a", 2),
        ("fermion", "phi", "phi", 1),
        ("virasoro_q", "L", "L", 4),
        ("virasoro_q", "L", "C", 0),
        ("affine_abelian", "a", "a", 2),
    ],
)
def test_locality_orders(request, fixture, left, right, expected):
    V = request.getfixturevalue(fixture)
    assert _order(V, left, right) == expected


def test_mode_commutator_of_the_boson(boson):
    a = boson.generator("a")
    assert commutator(a, a, 2, -2, boson.vacuum) == boson.vacuum * 2
    assert not commutator(a, a, 2, -1, boson.vacuum)


def test_field_derivative_matches_divided_translation(boson):
    a = boson.generator("a")
    for m in range(5):
        assert fs(field_derivative(a, m), boson) == translation_divided(boson, fs(a, boson), m)


def test_fermion_normal_square_vanishes(fermion):
    phi = fermion.generator("phi")
    square = nproduct(phi, phi, -1)
    assert not fs(square, fermion)
    for v in fermion.probes(3):
        for n in range(-3, 3):
            assert not square.apply(n, v)


def test_even_and_odd_fields_do_not_add(fermion):
    with pytest.raises(ParityError):
        field_combination([(1, fermion.generator("phi")), (1, fermion.identity)], fermion.space)


MODES = range(-3, 4)


def _assert_same_modes(V, left, right, grade_cap=2):
    for v in V.probes(grade_cap):
        for p in MODES:
            assert left.apply(p, v) == right.apply(p, v), (p, v.render())


def _generator_pair(data, boson, fermion, virasoro_q, affine_abelian):
    V, left, right = data.draw(
        st.sampled_from(
            [
                (boson, "a", "a"),
                (fermion, "phi", "phi"),
                (virasoro_q, "L", "L"),
                (affine_abelian, "a", "a"),
            ]
        )
    )
    return V, V.generator(left), V.generator(right)


@settings(max_examples=25, deadline=None)
@given(data=st.data(), n=st.integers(min_value=-3, max_value=3))
def test_derivative_of_the_left_factor_shifts_the_product(data, n, boson, fermion, virasoro_q, affine_abelian):
    V, a, b = _generator_pair(data, boson, fermion, virasoro_q, affine_abelian)
    left = nproduct(field_derivative(a, 1), b, n)
    right = field_combination([(-n, nproduct(a, b, n - 1))], V.space)
    _assert_same_modes(V, left, right)


@settings(max_examples=25, deadline=None)
@given(data=st.data(), n=st.integers(min_value=-3, max_value=3))
def test_derivative_is_a_derivation_of_every_product(data, n, boson, fermion, virasoro_q, affine_abelian):
    V, a, b = _generator_pair(data, boson, fermion, virasoro_q, affine_abelian)
    left = field_derivative(nproduct(a, b, n), 1)
    right = field_combination(
        [(1, nproduct(field_derivative(a, 1), b, n)), (1, nproduct(a, field_derivative(b, 1), n))],
        V.space,
    )
    _assert_same_modes(V, left, right)


def test_mode_memo_keeps_at_most_its_limit(boson):
    a = boson.generator("a")
    small = ModeField("a", boson.space, a.action, a.bound, cache_limit=8)
    for v in boson.probes(3):
        for p in MODES:
            assert small.apply(p, v) == a.apply(p, v)
    assert 0 < len(small._cache) <= 8
    assert len(small._bounds) <= 8
    assert a.cache_limit == MODE_CACHE_LIMIT
