import csv
import json
from fractions import Fraction

import pytest
from openpyxl import load_workbook

from verdex.cli.deps import load_algebra
from verdex.models.algebra import IdentityReport, Verdict
from verdex.services.config_service import parse_run_config
from verdex.services.export_service import CASE_COLUMNS, write_csv, write_json, write_xlsx
from verdex.services.suite_service import (
    FORMAL_BRACKETS,
    CaseResult,
    _flag_admissibility,
    build_report,
    exit_code,
    run_suites,
)


def _config(**data):
    return parse_run_config(data)


def _identity_suites():
    return _config(
        suites=["borcherds", "skew", "commutator", "tderivation"],
        algebra={"kind": "boson"},
        probes={"grade_cap": 2, "count": 5, "modes": 2},
    )


def test_identity_suites_hold_on_the_boson(boson):
    results = run_suites(boson, _identity_suites())
    assert len(results) == 20
    assert {r.report.verdict for r in results} == {Verdict.EXACT_ZERO}
    assert [r.index for r in results] == list(range(20))
    assert exit_code(results) == 0


def test_cases_keep_their_order_across_workers(boson):
    config = _identity_suites()
    serial = run_suites(boson, config, workers=1)
    threaded = run_suites(boson, config, workers=3)
    key = lambda r: (r.suite, r.report.identity, r.report.params)
    assert [key(r) for r in serial] == [key(r) for r in threaded]


def test_seed_changes_the_cases(boson):
    first = run_suites(boson, _identity_suites())
    config = _identity_suites()
    config = config.model_copy(update={"probes": config.probes.model_copy(update={"seed": 7})})
    second = run_suites(boson, config)
    assert [r.report.params for r in first] != [r.report.params for r in second]


def test_admissibility_suite_reports_probe_ratios(bosont_2adic):
    config = _config(
        suites=["admissibility"],
        algebra={"kind": "bosonT", "ring": "Q", "norm": {"kind": "p-adic", "p": 2}},
        probes={"grade_cap": 2},
    )
    report = build_report(bosont_2adic, config, run_suites(bosont_2adic, config))
    assert [case.values["ratio"].value for case in report.cases] == ["1", "2", "4", "8"]
    assert report.summary.probe == 4
    assert report.exit_code == 0


def test_radius_suite_is_skipped_for_the_trivial_norm(boson):
    config = _config(suites=["radius"], algebra={"kind": "boson"})
    assert run_suites(boson, config) == []


def test_radius_suite_certifies_virasoro(virasoro_3adic):
    config = _config(
        suites=["radius"],
        algebra={"kind": "virasoro", "norm": {"kind": "p-adic", "p": 3}},
        probes={"grade_cap": 3, "count": 4},
    )
    results = run_suites(virasoro_3adic, config)
    assert {r.report.verdict for r in results} == {Verdict.CERTIFIED}


def test_locality_suite_with_small_nmax_is_inconclusive(virasoro_q):
    config = _config(
        suites=["locality"],
        algebra={"kind": "virasoro", "ring": "Q"},
        probes={"grade_cap": 2},
        budgets={"nmax": 2},
    )
    report = build_report(virasoro_q, config, run_suites(virasoro_q, config))
    assert report.exit_code == 2
    assert report.inconclusive_cases
    assert all(report.cases[i].verdict == "inconclusive" for i in report.inconclusive_cases)


def test_any_nonzero_case_fails_the_run():
    reports = [
        IdentityReport("skew_symmetry", "boson", {}, Fraction(0), Verdict.INCONCLUSIVE),
        IdentityReport("borcherds", "boson", {}, Fraction(1), Verdict.NONZERO),
    ]
    results = [CaseResult(i, "borcherds", r) for i, r in enumerate(reports)]
    assert exit_code(results) == 1
    assert exit_code(results[:1]) == 2
    assert exit_code([]) == 0


def test_conformal_reports_on_non_admissible_algebras_are_flagged(boson, bosont_2adic):
    report = IdentityReport("sesquilinearity", "x", {}, Fraction(0), Verdict.EXACT_ZERO)
    assert _flag_admissibility(boson, report) is report
    flagged = _flag_admissibility(bosont_2adic, report)
    assert flagged.detail == FORMAL_BRACKETS
    assert flagged.verdict is Verdict.EXACT_ZERO


def test_report_exports(boson, tmp_path):
    config = _identity_suites()
    report = build_report(boson, config, run_suites(boson, config))

    data = json.loads(write_json(report, tmp_path / "report.json").read_text(encoding="utf-8"))
    assert data["schemaVersion"] == 1
    assert data["summary"]["exact_zero"] == 20
    assert data["suites"] == ["borcherds", "skew", "commutator", "tderivation"]

    with write_csv(report, tmp_path / "cases.csv").open(newline="", encoding="utf-8") as handle:
        rows = list(csv.reader(handle))
    assert rows[0] == CASE_COLUMNS
    assert len(rows) == 21

    workbook = load_workbook(write_xlsx(report, tmp_path / "cases.xlsx"))
    assert workbook.sheetnames == ["Summary", "Cases"]
    assert workbook["Cases"]["C2"].value == "borcherds"
    assert workbook["Summary"]["B6"].value == 20


@pytest.mark.slow
@pytest.mark.parametrize(
    "name",
    ["virasoro_c0", "virasoro_c_half", "fermion", "affine_abelian", "boson", "virasoro_q"],
)
def test_shipped_configs_pass_every_suite(specs_dir, name):
    config, V = load_algebra(specs_dir / f"{name}.toml")
    assert config.probes.grade_cap == 6
    assert config.probes.count == 200
    report = build_report(V, config, run_suites(V, config))
    assert report.summary.nonzero == 0
    assert report.summary.inconclusive == 0
    assert report.summary.exact_zero > 0
    assert report.exit_code == 0
