from fractions import Fraction

import pytest

from verdex.core.errors import AxiomViolation, OutsideReachableSpan, QuotientCollapsed, RingError, VerdexError
from verdex.models.algebra import Verdict
from verdex.models.field import ModeField
from verdex.models.scalar import BaseRing, NormCtx
from verdex.models.series import Window
from verdex.models.state import BosonMonomial, State
from verdex.services.field_service import locality_order
from verdex.services.free_field_service import boson_to_bosont, free_boson_t
from verdex.services.lie_algebra_service import affine_to_boson, boson_to_affine, virasoro
from verdex.services.vertex_service import (
    admissibility_probe,
    central_quotient,
    check_homomorphism,
    closure_generate,
    exp_zT,
    fs,
    locality_probes,
    product_norm_probe,
    state_field,
    translation_divided,
    validate_algebra,
    validate_fields,
)


@pytest.mark.parametrize(
    "fixture, grade_cap",
    [("boson", 3), ("fermion", 4), ("virasoro_q", 4), ("affine_abelian", 3)],
)
def test_state_field_inverts_fs(request, fixture, grade_cap):
    V = request.getfixturevalue(fixture)
    for v in V.probes(grade_cap):
        assert fs(state_field(V, v), V) == v


def test_vacuum_field_is_the_identity(boson):
    assert state_field(boson, boson.vacuum) is boson.identity


def test_exp_zT_reads_divided_translations(boson):
    x1 = fs(boson.generator("a"), boson)
    series = exp_zT(boson, x1, Window(0, 4))
    for n in range(4):
        assert series.coefficient(n) == translation_divided(boson, x1, n)
        assert series.coefficient(n) == State.basis(boson.space, BosonMonomial.of({n + 1: 1}))


def test_bosont_reachability_depends_on_the_ring(trivial):
    y2 = State.basis(free_boson_t(trivial).space, BosonMonomial.of({2: 1}))
    with pytest.raises(OutsideReachableSpan):
        state_field(free_boson_t(trivial), y2)
    over_q = free_boson_t(trivial, BaseRing.rationals())
    assert fs(state_field(over_q, y2), over_q) == y2


def test_boson_closure_is_generated_by_a(boson):
    table = closure_generate(boson, 1, (0, 2))
    assert set(table.entries) == {"I", "a"}
    assert table.product("a", "a", 1).label == "I"
    assert table.product("a", "a", 0) is None


def test_central_quotients():
    with pytest.raises(RingError):
        central_quotient(virasoro(NormCtx.padic(3), BaseRing.localized(2)), Fraction(1, 3))
    with pytest.raises(QuotientCollapsed):
        central_quotient(virasoro(NormCtx.padic(3), BaseRing.rationals()), Fraction(1, 3))
    quotient = central_quotient(virasoro(NormCtx.padic(3), BaseRing.localized(2)), 3)
    assert quotient.space.central_value == 3


def test_boson_has_no_central_quotient(boson):
    with pytest.raises(VerdexError):
        central_quotient(boson, 1)


# n range of the shipped suite windows (n_min = -2, n_max = 4)
SUITE_N_RANGE = range(-2, 5)


@pytest.mark.parametrize("grade_cap", [3, pytest.param(6, marks=pytest.mark.slow)])
def test_boson_embeds_into_bosont(boson, trivial, grade_cap):
    target = free_boson_t(trivial)
    phi = boson_to_bosont(boson, target)
    report = check_homomorphism(boson, target, phi, boson.probes(grade_cap), SUITE_N_RANGE)
    assert report.verdict is Verdict.EXACT_ZERO
    assert report.params["states"] == len(boson.probes(grade_cap))


@pytest.mark.parametrize("grade_cap", [3, pytest.param(6, marks=pytest.mark.slow)])
def test_abelian_affine_level_one_is_the_boson(affine_abelian, boson, grade_cap):
    phi = affine_to_boson(affine_abelian, boson)
    report = check_homomorphism(affine_abelian, boson, phi, affine_abelian.probes(grade_cap), SUITE_N_RANGE)
    assert report.verdict is Verdict.EXACT_ZERO
    back = boson_to_affine(boson, affine_abelian)
    for v in boson.probes(grade_cap):
        assert phi(back(v)) == v


@pytest.mark.parametrize("fixture, p", [("bosont_2adic", 2), ("bosont_3adic", 3)])
def test_bosont_admissibility_ratios_grow(request, fixture, p):
    V = request.getfixturevalue(fixture)
    rows = admissibility_probe(V, 2)
    assert [row.ratio for row in rows] == [p**k for k in range(4)]
    assert all(row.field_norm == 1 for row in rows)


def test_diagonal_admissibility_ratios(diagonal_3adic):
    rows = admissibility_probe(diagonal_3adic, 8)
    assert [row.ratio for row in rows] == [3**n for n in range(9)]


@pytest.mark.parametrize("fixture", ["boson", "fermion", "affine_abelian", "diagonal_3adic"])
def test_sample_algebras_validate(request, fixture):
    validate_algebra(request.getfixturevalue(fixture))


def test_product_norm_probe_stays_within_the_bound(boson):
    x1 = fs(boson.generator("a"), boson)
    report = product_norm_probe(boson, x1, x1, range(-2, 3), grade_cap=3)
    assert report.verdict is Verdict.PROBE
    assert report.defect == 0
    assert report.values["product"].value == 1
    assert report.values["bound"].value == 1


def _excited_projection(V):
    """b_(-1) fixes monomials of degree >= 2 and every other mode vanishes."""

    def action(n, index):
        if n == -1 and index.degree >= 2:
            return State.basis(V.space, index)
        return State.zero(V.space)

    return ModeField("b", V.space, action, lambda index: 0)


def test_locality_is_measured_beyond_the_vacuum(boson):
    b, a = _excited_projection(boson), boson.generator("a")
    assert locality_order(b, a, [boson.vacuum], 12, Window(-14, 2), boson.ctx).order == 0
    assert locality_order(b, a, boson.probes(3), 12, Window(-14, 2), boson.ctx).order == 6
    with pytest.raises(AxiomViolation) as excinfo:
        validate_fields(boson, [b], [a], boson.probes(3), nmax=4)
    assert excinfo.value.axiom == "locality"


def test_locality_probes_start_at_the_vacuum(boson):
    states = locality_probes(boson, boson.probes(2)[::-1])
    assert states[0] == boson.vacuum
    assert len(states) == len(boson.probes(2))
