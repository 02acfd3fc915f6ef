from fractions import Fraction
from pathlib import Path

import pytest

from verdex.models.scalar import BaseRing, NormCtx
from verdex.services.commutative_service import commutative_power_series, diagonal_algebra
from verdex.services.free_field_service import free_boson, free_boson_t, free_fermion
from verdex.services.lie_algebra_service import abelian_lie, affine, virasoro
from verdex.services.vertex_service import central_quotient

SPECS_DIR = Path(__file__).resolve().parent.parent / "specs"


@pytest.fixture(scope="session")
def trivial():
    return NormCtx.trivial()


@pytest.fixture(scope="session")
def specs_dir():
    return SPECS_DIR


@pytest.fixture(scope="session")
def boson(trivial):
    return free_boson(trivial)


@pytest.fixture(scope="session")
def fermion(trivial):
    return free_fermion(trivial)


@pytest.fixture(scope="session")
def virasoro_q(trivial):
    return virasoro(trivial, BaseRing.rationals())


@pytest.fixture(scope="session")
def virasoro_half(virasoro_q):
    return central_quotient(virasoro_q, Fraction(1, 2))


@pytest.fixture(scope="session")
def virasoro_3adic():
    return virasoro(NormCtx.padic(3), BaseRing.localized(2))


@pytest.fixture(scope="session")
def affine_abelian(trivial):
    return central_quotient(affine(abelian_lie(), trivial), 1)


@pytest.fixture(scope="session")
def bosont_2adic():
    return free_boson_t(NormCtx.padic(2), BaseRing.rationals(), witness_levels=3)


@pytest.fixture(scope="session")
def bosont_3adic():
    return free_boson_t(NormCtx.padic(3), BaseRing.rationals(), witness_levels=3)


@pytest.fixture(scope="session")
def diagonal_3adic():
    return diagonal_algebra(NormCtx.padic(3), truncation=8)
