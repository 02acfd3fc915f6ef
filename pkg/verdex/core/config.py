from __future__ import annotations

import os
from functools import lru_cache

from dotenv import load_dotenv


load_dotenv()


class Settings:
    """Process configuration loaded from environment variables."""

    log_level: str
    nmax: int
    window_margin: int
    depth_budget: int
    workers: int
    validate_on_build: bool

    def __init__(self) -> None:
        self.log_level = os.getenv("VERDEX_LOG_LEVEL", "WARNING").strip().upper() or "WARNING"
        self.nmax = self._parse_int(os.getenv("VERDEX_NMAX"), default=12, low=1, high=64)
        self.window_margin = self._parse_int(os.getenv("VERDEX_WINDOW_MARGIN"), default=6, low=1, high=64)
        self.depth_budget = self._parse_int(os.getenv("VERDEX_DEPTH_BUDGET"), default=256, low=1, high=100000)
        self.workers = self._parse_int(os.getenv("VERDEX_WORKERS"), default=1, low=1, high=64)
        self.validate_on_build = self._parse_bool(os.getenv("VERDEX_VALIDATE_ON_BUILD"), default=True)

        self._runtime_validated = False

    @staticmethod
    def _parse_int(raw: str | None, *, default: int, low: int, high: int) -> int:
        if raw is None:
            return default
        try:
            value = int(raw.strip())
        except ValueError:
            value = default
        return max(low, min(value, high))

    @staticmethod
    def _parse_bool(raw: str | None, *, default: bool) -> bool:
        if raw is None:
            return default
        normalized = raw.strip().lower()
        if normalized in {"1", "true", "yes", "on"}:
            return True
        if normalized in {"0", "false", "no", "off"}:
            return False
        return default

    def validate_runtime(self) -> None:
        if self._runtime_validated:
            return

        if self.log_level not in {"CRITICAL", "ERROR", "WARNING", "INFO", "DEBUG"}:
            raise ValueError("VERDEX_LOG_LEVEL must be one of CRITICAL, ERROR, WARNING, INFO, DEBUG.")

        self._runtime_validated = True


@lru_cache()
def get_settings() -> Settings:
    return Settings()


settings = get_settings()
