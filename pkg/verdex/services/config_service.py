from __future__ import annotations

import logging
try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib
from pathlib import Path
from typing import Any

from pydantic import ValidationError

from verdex.core.errors import ConfigurationError
from verdex.schemas.config import RunConfig


logger = logging.getLogger(__name__)


def format_validation_error(error: ValidationError) -> str:
    parts = []
    for item in error.errors():
        where = ".".join(str(piece) for piece in item.get("loc", ())) or "<root>"
        parts.append(f"{where}: {item.get('msg', 'invalid value')}")
    return "; ".join(parts)


def read_toml(path: Path | str) -> dict[str, Any]:
    path = Path(path)
    try:
        with path.open("rb") as handle:
            return tomllib.load(handle)
    except FileNotFoundError:
        raise ConfigurationError(f"config file {path} does not exist") from None
    except tomllib.TOMLDecodeError as exc:
        raise ConfigurationError(f"{path} is not valid TOML: {exc}") from None


def parse_run_config(data: dict[str, Any], source: str = "<config>") -> RunConfig:
    try:
        return RunConfig.model_validate(data)
    except ValidationError as exc:
        raise ConfigurationError(f"{source}: {format_validation_error(exc)}") from None


def load_run_config(path: Path | str) -> RunConfig:
    config = parse_run_config(read_toml(path), str(path))
    logger.info("loaded run config %s (algebra %s, suites %s)", path, config.algebra.kind.value, config.suites or "none")
    return config
