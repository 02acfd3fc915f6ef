from __future__ import annotations

from pathlib import Path

import click

from verdex.cli.deps import handle_errors, load_algebra
from verdex.core.constants import SUITES
from verdex.schemas.report import ReportOut
from verdex.services.export_service import to_json, write_csv, write_json, write_xlsx
from verdex.services.suite_service import build_report, run_suites


def render_table(report: ReportOut) -> str:
    counts: dict[tuple[str, str], int] = {}
    for case in report.cases:
        key = (case.suite, case.verdict)
        counts[key] = counts.get(key, 0) + 1
    lines = [f"{report.algebra} over {report.ring} ({report.norm} norm), seed {report.seed}"]
    lines.append(f"{'suite':<14}{'verdict':<14}cases")
    for (suite, verdict), count in sorted(counts.items()):
        lines.append(f"{suite:<14}{verdict:<14}{count}")
    lines.append(f"total {report.summary.total}, nonzero {report.summary.nonzero}, inconclusive {report.summary.inconclusive}")
    if report.inconclusive_cases:
        lines.append("inconclusive cases:")
        for index in report.inconclusive_cases:
            case = report.cases[index]
            lines.append(f"  #{index} {case.identity}: {case.detail or ''}")
    return "\n".join(lines)


@click.command("verify")
@click.argument("config_path", type=click.Path(exists=True, dir_okay=False))
@click.option("--suite", "suites", multiple=True, type=click.Choice(SUITES), help="Run only these suites; repeatable.")
@click.option("--seed", type=int, default=None, help="Override the probe seed.")
@click.option("--workers", type=click.IntRange(1, 64), default=None, help="Thread count for suite cases.")
@click.option("--out", "out_path", type=click.Path(dir_okay=False), default=None, help="Write the JSON report here.")
@click.option("--csv", "csv_path", type=click.Path(dir_okay=False), default=None, help="Write the case table as CSV.")
@click.option("--xlsx", "xlsx_path", type=click.Path(dir_okay=False), default=None, help="Write the case table as a workbook.")
@handle_errors
def verify_command(
    config_path: str,
    suites: tuple[str, ...],
    seed: int | None,
    workers: int | None,
    out_path: str | None,
    csv_path: str | None,
    xlsx_path: str | None,
) -> None:
    """Run identity suites on the configured algebra and report every case."""

    config, V = load_algebra(config_path)
    overrides: dict = {}
    if suites:
        overrides["suites"] = list(suites)
    if seed is not None:
        overrides["probes"] = config.probes.model_copy(update={"seed": seed})
    if overrides:
        config = config.model_copy(update=overrides)

    results = run_suites(V, config, workers)
    report = build_report(V, config, results)
    if out_path:
        write_json(report, Path(out_path))
    if csv_path:
        write_csv(report, Path(csv_path))
    if xlsx_path:
        write_xlsx(report, Path(xlsx_path))
    click.echo(render_table(report) if out_path else to_json(report), nl=bool(out_path))
    raise SystemExit(report.exit_code)
