from itertools import product

import pytest

from verdex.models.algebra import Verdict
from verdex.models.series import Window
from verdex.services.identity_service import (
    check_borcherds,
    check_borcherds_bivariate,
    check_borcherds_fields,
    check_commutator,
    check_dong,
    check_locality,
    check_skew,
    check_skew_fields,
    t_derivation_check,
)
from verdex.services.vertex_service import fs

MODES = range(-2, 2)


def _generator_state(V, label):
    return fs(V.generator(label), V)


@pytest.mark.parametrize("m, n, k", list(product(MODES, repeat=3)))
def test_borcherds_on_boson_generators(boson, m, n, k):
    x1 = _generator_state(boson, "a")
    assert check_borcherds(boson, x1, x1, x1, m, n, k).verdict is Verdict.EXACT_ZERO


@pytest.mark.parametrize("m, n, k", [(0, 0, 0), (1, -1, 0), (-1, 2, -2), (2, 1, -1)])
def test_borcherds_on_fermion_states(fermion, m, n, k):
    probes = fermion.probes(3)
    for a, b in product(probes[1:3], repeat=2):
        report = check_borcherds(fermion, a, b, probes[-1], m, n, k)
        assert report.verdict is Verdict.EXACT_ZERO, report.params


@pytest.mark.parametrize("m, n", [(0, -1), (1, -2), (3, -3), (2, 0)])
def test_virasoro_commutator_formula(virasoro_q, m, n):
    L = _generator_state(virasoro_q, "L")
    for c in virasoro_q.probes(3):
        assert check_commutator(virasoro_q, L, L, c, m, n).verdict is Verdict.EXACT_ZERO


def test_skew_symmetry_and_t_derivation(virasoro_q):
    L = _generator_state(virasoro_q, "L")
    TL = virasoro_q.translation(L)
    assert check_skew(virasoro_q, L, TL, Window(-4, 4)).verdict is Verdict.EXACT_ZERO
    for n in range(-2, 4):
        assert t_derivation_check(virasoro_q, L, TL, n).verdict is Verdict.EXACT_ZERO


def test_skew_symmetry_with_odd_states(fermion):
    xi1, xi2 = fermion.probes(2)[1:3]
    assert check_skew(fermion, xi1, xi2, Window(-3, 3)).defect == 0


def test_locality_report_carries_the_order(boson):
    a = boson.generator("a")
    report = check_locality(boson, a, a, boson.probes(2), nmax=6, margin=6)
    assert report.verdict is Verdict.EXACT_ZERO
    assert report.values["order"].value == 2


def test_locality_inconclusive_when_nmax_too_small(virasoro_q):
    L = virasoro_q.generator("L")
    report = check_locality(virasoro_q, L, L, virasoro_q.probes(2), nmax=2, margin=6)
    assert report.verdict is Verdict.INCONCLUSIVE
    assert report.defect > 0


def test_dong_lemma_on_the_boson(boson):
    a = boson.generator("a")
    report = check_dong(boson, a, a, a, -1, boson.probes(2), range(-2, 3), nmax=8)
    assert report.verdict is Verdict.EXACT_ZERO
    assert report.values["order"].value == 2


@pytest.mark.parametrize("n", [-2, -1, 0, 1])
def test_bivariate_borcherds_on_the_boson(boson, n):
    x1 = _generator_state(boson, "a")
    x2 = boson.translation(x1)
    window = Window(-12, 12)
    report = check_borcherds_bivariate(boson, x1, x1, n, x2, window, window)
    assert report.verdict is Verdict.EXACT_ZERO


@pytest.mark.parametrize("n", [-2, -1, 0, 1, 2])
def test_skew_symmetry_of_fields(boson, n):
    x1 = _generator_state(boson, "a")
    x2 = boson.translation(x1)
    report = check_skew_fields(boson, x1, x2, n, boson.probes(2), range(-2, 3))
    assert report.verdict is Verdict.EXACT_ZERO


@pytest.mark.parametrize("m, n, k", [(0, 0, 0), (1, -1, 0), (-1, 0, 1), (0, 1, -2)])
def test_borcherds_for_fields(boson, m, n, k):
    x1 = _generator_state(boson, "a")
    report = check_borcherds_fields(boson, x1, x1, x1, m, n, k, boson.probes(2), range(-2, 3))
    assert report.verdict is Verdict.EXACT_ZERO
