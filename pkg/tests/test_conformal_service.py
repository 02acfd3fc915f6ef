from fractions import Fraction

import pytest

from verdex.core.errors import RingError, VerdexError
from verdex.models.algebra import Verdict
from verdex.models.state import PBWMonomial, State
from verdex.services.conformal_service import (
    check_conformal_axioms,
    check_jacobi,
    lambda_bracket,
    radius_certificate,
    radius_report,
)
from verdex.services.vertex_service import fs


def _state(V, label):
    return fs(V.generator(label), V)


def test_boson_lambda_bracket(boson):
    x1 = _state(boson, "a")
    bracket = lambda_bracket(boson, x1, x1)
    assert bracket.degree == 1
    assert bracket.coefficient(1) == boson.vacuum
    assert bracket.render() == "λ·(|0>)"


def test_fermion_lambda_bracket(fermion):
    xi1 = _state(fermion, "phi")
    bracket = lambda_bracket(fermion, xi1, xi1)
    assert bracket.degree == 0
    assert bracket.coefficient(0) == fermion.vacuum


def test_virasoro_lambda_bracket(virasoro_q):
    V = virasoro_q
    L = _state(V, "L")
    bracket = lambda_bracket(V, L, L)
    assert bracket.coefficient(0) == V.translation(L)
    assert bracket.coefficient(1) == L * 2
    assert not bracket.coefficient(2)
    assert bracket.coefficient(3) == State.basis(V.space, PBWMonomial(1, ()), Fraction(1, 12))


def test_lambda_bracket_must_stay_in_the_ring(virasoro_3adic):
    L = _state(virasoro_3adic, "L")
    with pytest.raises(RingError):
        lambda_bracket(virasoro_3adic, L, L)


@pytest.mark.parametrize("fixture, label", [("boson", "a"), ("fermion", "phi"), ("virasoro_q", "L")])
def test_conformal_axioms_hold_on_generators(request, fixture, label):
    V = request.getfixturevalue(fixture)
    a = _state(V, label)
    for report in check_conformal_axioms(V, a, V.translation(a), a):
        assert report.verdict is Verdict.EXACT_ZERO, report.identity


def test_conformal_axioms_hold_over_z_after_dividing(virasoro_3adic):
    L = _state(virasoro_3adic, "L")
    for report in check_conformal_axioms(virasoro_3adic, L, L, L):
        assert report.verdict is Verdict.EXACT_ZERO, report.identity


def test_jacobi_on_affine_states(affine_abelian):
    probes = affine_abelian.probes(2)[1:]
    report = check_jacobi(affine_abelian, probes[0], probes[1], probes[2])
    assert report.verdict is Verdict.EXACT_ZERO


def test_radius_certificate_for_virasoro(virasoro_3adic):
    L = _state(virasoro_3adic, "L")
    terms = {term.n: term for term in radius_certificate(virasoro_3adic, L, L)}
    assert terms[3].bound_exponent == Fraction(-1, 2)
    assert terms[3].exponent == Fraction(-1, 2)
    assert terms[2].exponent is None
    report = radius_report(virasoro_3adic, L, L)
    assert report.verdict is Verdict.CERTIFIED
    assert report.values["n=0"].value == 0
    assert report.values["bound n=3"].value == pytest.approx(3 ** -0.5)


def test_radius_needs_a_padic_norm(boson):
    x1 = _state(boson, "a")
    with pytest.raises(VerdexError):
        radius_certificate(boson, x1, x1)
