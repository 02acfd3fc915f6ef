from fractions import Fraction

import pytest

from verdex.core.errors import ConfigurationError, LieDataError, RingError
from verdex.models.state import SpaceTag
from verdex.schemas.config import AlgebraSection
from verdex.schemas.lie import LieDataFile
from verdex.services.algebra_service import build_algebra, lie_data_from_file, load_lie_data
from verdex.services.config_service import load_run_config, parse_run_config


def test_parse_minimal_config():
    config = parse_run_config({"algebra": {"kind": "boson"}})
    assert config.suites == []
    assert config.algebra.kind is SpaceTag.BOSON
    assert config.probes.grade_cap == 4
    assert config.windows.closure_depth == 0


def test_rationals_accept_strings_and_integers():
    config = parse_run_config({"algebra": {"kind": "virasoro", "ring": "Q", "central_charge": "1/2"}})
    assert config.algebra.central_charge == Fraction(1, 2)
    config = parse_run_config({"algebra": {"kind": "commutativePS", "radius": 3}})
    assert config.algebra.radius == 3


def test_suites_are_checked_and_deduplicated():
    config = parse_run_config({"suites": ["skew", "borcherds", "skew"], "algebra": {"kind": "boson"}})
    assert config.suites == ["skew", "borcherds"]
    with pytest.raises(ConfigurationError, match="unknown suites"):
        parse_run_config({"suites": ["jacobi"], "algebra": {"kind": "boson"}})


@pytest.mark.parametrize(
    "algebra",
    [
        {"kind": "affine"},
        {"kind": "commutativePS"},
        {"kind": "boson", "central_charge": 1},
        {"kind": "virasoro", "level": 1},
        {"kind": "boson", "ring": "R"},
        {"kind": "boson", "norm": {"kind": "p-adic", "p": 6}},
        {"kind": "boson", "colour": "blue"},
    ],
)
def test_invalid_algebra_sections(algebra):
    with pytest.raises(ConfigurationError):
        parse_run_config({"algebra": algebra})


def test_load_sample_configs(specs_dir):
    config = load_run_config(specs_dir / "bosont_p2.toml")
    assert config.algebra.norm.p == 2
    assert config.suites == ["admissibility"]


def test_missing_and_broken_files(tmp_path):
    with pytest.raises(ConfigurationError, match="does not exist"):
        load_run_config(tmp_path / "absent.toml")
    broken = tmp_path / "broken.toml"
    broken.write_text("[algebra\nkind = 1\n")
    with pytest.raises(ConfigurationError, match="not valid TOML"):
        load_run_config(broken)


def test_sl2_lie_data(specs_dir):
    lie = load_lie_data(specs_dir / "lie" / "sl2.toml")
    assert lie.labels == ("e", "h", "f")
    assert lie.bracket(lie.index("f"), lie.index("e")) == ((1, Fraction(-1)),)


def test_lie_data_needs_an_invariant_form():
    model = LieDataFile(
        name="broken",
        labels=["x", "y", "z"],
        form=[[1, 0, 0], [0, 1, 0], [0, 0, 1]],
        brackets=[{"left": "x", "right": "y", "result": {"x": 1}}],
    )
    with pytest.raises(LieDataError):
        lie_data_from_file(model)


def test_build_virasoro_over_z_fails():
    with pytest.raises(RingError):
        build_algebra(AlgebraSection(kind="virasoro", ring="Z"), validate=False)


def test_build_affine_relative_to_config(specs_dir):
    section = AlgebraSection(kind="affine", lie_data="lie/abelian.toml", level=1)
    V = build_algebra(section, base_dir=specs_dir)
    assert V.space.central_value == 1
    assert set(V.generators) == {"a", "K"}
