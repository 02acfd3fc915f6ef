# Command-line front end: verdex build | eval | verify.
from __future__ import annotations

import click

from verdex.cli.build import build_command
from verdex.cli.evaluate import eval_command
from verdex.cli.verify import verify_command
from verdex.core.config import settings
from verdex.core.log import configure_logging


@click.group()
@click.option("--log-level", default=None, help="Overrides VERDEX_LOG_LEVEL.")
def main(log_level: str | None) -> None:
    """Exact computations in non-Archimedean vertex algebras."""

    settings.validate_runtime()
    configure_logging(log_level or settings.log_level)


main.add_command(build_command)
main.add_command(eval_command)
main.add_command(verify_command)
