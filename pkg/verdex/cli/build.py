from __future__ import annotations

import click

from verdex.cli.deps import handle_errors, load_algebra
from verdex.core.config import settings
from verdex.models.algebra import VertexAlgebra
from verdex.models.series import Window
from verdex.schemas.report import BuildSummaryOut, GeneratorOut, LocalityOut
from verdex.services.export_service import to_json
from verdex.services.field_service import locality_order
from verdex.services.vertex_service import fs


def summarize(V: VertexAlgebra, grade_cap: int, nmax: int | None = None) -> BuildSummaryOut:
    nmax = nmax or settings.nmax
    window = Window(-(nmax + settings.window_margin), settings.window_margin)
    probes = V.probes(grade_cap)
    generators = [
        GeneratorOut(label=label, parity=field.parity.value, fs=fs(field, V).render())
        for label, field in V.generators.items()
    ]
    labels = list(V.generators)
    locality = []
    for i, left in enumerate(labels):
        for right in labels[i:]:
            report = locality_order(V.generators[left], V.generators[right], probes, nmax, window, V.ctx)
            locality.append(LocalityOut(left=left, right=right, order=report.order))
    return BuildSummaryOut(algebra=V.name, ring=V.ring.label, norm=V.ctx.label, generators=generators, locality=locality)


def render_summary(summary: BuildSummaryOut) -> str:
    lines = [f"algebra: {summary.algebra}", f"ring: {summary.ring}  norm: {summary.norm}", "generators:"]
    width = max((len(g.label) for g in summary.generators), default=1)
    for generator in summary.generators:
        lines.append(f"  {generator.label:<{width}}  {generator.parity:<4}  fs = {generator.fs}")
    lines.append("locality:")
    for row in summary.locality:
        order = "not found" if row.order is None else str(row.order)
        lines.append(f"  ({row.left}, {row.right})  N = {order}")
    return "\n".join(lines)


@click.command("build")
@click.argument("config_path", type=click.Path(exists=True, dir_okay=False))
@click.option("--json", "as_json", is_flag=True, help="Print the summary as JSON.")
@handle_errors
def build_command(config_path: str, as_json: bool) -> None:
    """Build the algebra described by CONFIG_PATH and summarize its generators."""

    config, V = load_algebra(config_path)
    summary = summarize(V, min(config.probes.grade_cap, 3), config.budgets.nmax)
    click.echo(to_json(summary) if as_json else render_summary(summary), nl=not as_json)
