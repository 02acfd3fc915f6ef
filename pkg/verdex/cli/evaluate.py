from __future__ import annotations

import click

from verdex.cli.deps import handle_errors, load_algebra
from verdex.schemas.report import EvalOut
from verdex.services.export_service import to_json
from verdex.services.expression_service import ExpressionEvaluator


@click.command("eval")
@click.argument("config_path", type=click.Path(exists=True, dir_okay=False))
@click.option("-e", "--expression", "expressions", multiple=True, required=True, help="Expression to evaluate; repeatable.")
@click.option("--json", "as_json", is_flag=True, help="Print one JSON document per expression.")
@handle_errors
def eval_command(config_path: str, expressions: tuple[str, ...], as_json: bool) -> None:
    """Evaluate n-th products, fields, translations and lambda-brackets in the configured algebra."""

    _, V = load_algebra(config_path)
    evaluator = ExpressionEvaluator(V)
    for text in expressions:
        result = evaluator.evaluate(text)
        if as_json:
            out = EvalOut(algebra=V.name, expression=text, kind=result.kind, result=result.text)
            click.echo(to_json(out), nl=False)
        else:
            click.echo(result.text)
