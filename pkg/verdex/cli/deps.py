from __future__ import annotations

import functools
import sys
from collections.abc import Callable
from pathlib import Path
from typing import Any

import click
from pydantic import ValidationError

from verdex.core.constants import EXIT_CONFIG_ERROR
from verdex.core.errors import AxiomViolation, VerdexError
from verdex.models.algebra import VertexAlgebra
from verdex.schemas.config import RunConfig
from verdex.services.algebra_service import build_algebra
from verdex.services.config_service import format_validation_error, load_run_config


def load_algebra(config_path: str | Path) -> tuple[RunConfig, VertexAlgebra]:
    path = Path(config_path)
    config = load_run_config(path)
    return config, build_algebra(config.algebra, base_dir=path.parent)


def handle_errors(command: Callable[..., Any]) -> Callable[..., Any]:
    """Turn service errors into a message on stderr and exit code 3."""

    @functools.wraps(command)
    def wrapper(*args: Any, **kwargs: Any) -> Any:
        try:
            return command(*args, **kwargs)
        except AxiomViolation as exc:
            click.echo(f"error: axiom {exc.axiom} violated: {exc.witness}", err=True)
        except ValidationError as exc:
            click.echo(f"error: {format_validation_error(exc)}", err=True)
        except VerdexError as exc:
            click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_CONFIG_ERROR)

    return wrapper
