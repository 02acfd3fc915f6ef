import json

from click.testing import CliRunner

from verdex.cli import main


def _run(*args):
    return CliRunner().invoke(main, [str(arg) for arg in args])


def test_build_reports_locality_orders(specs_dir):
    result = _run("build", specs_dir / "virasoro_q.toml")
    assert result.exit_code == 0, result.output
    assert "(L, L)  N = 4" in result.output
    assert "fs = L[-2]" in result.output


def test_build_json_summary(specs_dir):
    result = _run("build", specs_dir / "boson.toml", "--json")
    assert result.exit_code == 0, result.output
    summary = json.loads(result.stdout)
    assert summary["generators"] == [{"fs": "x1", "label": "a", "parity": "even"}]
    assert summary["locality"] == [{"left": "a", "order": 2, "right": "a"}]


def test_build_fails_when_two_is_not_invertible(specs_dir):
    result = _run("build", specs_dir / "virasoro_z.toml")
    assert result.exit_code == 3
    assert "error:" in result.output


def test_eval_expressions(specs_dir):
    result = _run("eval", specs_dir / "virasoro_q.toml", "-e", "nprod(L, L, 3)", "-e", "Y(vac)")
    assert result.exit_code == 0, result.output
    assert result.stdout.splitlines() == ["1/2 * C", "I"]


def test_eval_reports_bad_expressions(specs_dir):
    result = _run("eval", specs_dir / "boson.toml", "-e", "frob(a)")
    assert result.exit_code == 3
    assert "unknown function" in result.output


def test_verify_without_suites_passes(tmp_path):
    config = tmp_path / "empty.toml"
    config.write_text('[algebra]\nkind = "boson"\n')
    result = _run("verify", config)
    assert result.exit_code == 0, result.output
    assert json.loads(result.stdout)["summary"]["total"] == 0


def test_verify_writes_reports(tmp_path):
    config = tmp_path / "boson.toml"
    config.write_text('suites = ["skew", "tderivation"]\n\n[algebra]\nkind = "boson"\n\n[probes]\ngrade_cap = 2\ncount = 3\n')
    out = tmp_path / "report.json"
    result = _run("verify", config, "--out", out, "--csv", tmp_path / "cases.csv", "--seed", 5)
    assert result.exit_code == 0, result.output
    assert "total 6, nonzero 0, inconclusive 0" in result.output
    report = json.loads(out.read_text(encoding="utf-8"))
    assert report["seed"] == 5
    assert report["exit_code"] == 0
    assert (tmp_path / "cases.csv").exists()


def test_verify_suite_option_overrides_config(tmp_path):
    config = tmp_path / "boson.toml"
    config.write_text('suites = ["skew"]\n\n[algebra]\nkind = "boson"\n\n[probes]\ncount = 2\n')
    result = _run("verify", config, "--suite", "tderivation")
    assert result.exit_code == 0, result.output
    assert json.loads(result.stdout)["suites"] == ["tderivation"]


def test_invalid_config_exits_with_three(tmp_path):
    config = tmp_path / "bad.toml"
    config.write_text('[algebra]\nkind = "boson"\nlevel = 1\n')
    result = _run("verify", config)
    assert result.exit_code == 3
    assert "level only applies" in result.output
