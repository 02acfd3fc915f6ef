import logging

import pytest

from verdex.core.config import Settings
from verdex.core.log import configure_logging


def test_settings_defaults(monkeypatch):
    for name in ("VERDEX_NMAX", "VERDEX_WORKERS", "VERDEX_VALIDATE_ON_BUILD", "VERDEX_LOG_LEVEL"):
        monkeypatch.delenv(name, raising=False)
    current = Settings()
    assert current.nmax == 12
    assert current.workers == 1
    assert current.validate_on_build is True
    assert current.log_level == "WARNING"


@pytest.mark.parametrize("raw, expected", [("abc", 12), ("1000", 64), ("0", 1), (" 7 ", 7)])
def test_integer_settings_are_clamped(monkeypatch, raw, expected):
    monkeypatch.setenv("VERDEX_NMAX", raw)
    assert Settings().nmax == expected


def test_boolean_settings(monkeypatch):
    monkeypatch.setenv("VERDEX_VALIDATE_ON_BUILD", "off")
    assert Settings().validate_on_build is False
    monkeypatch.setenv("VERDEX_VALIDATE_ON_BUILD", "maybe")
    assert Settings().validate_on_build is True


def test_unknown_log_level_is_rejected(monkeypatch):
    monkeypatch.setenv("VERDEX_LOG_LEVEL", "chatty")
    with pytest.raises(ValueError):
        Settings().validate_runtime()


def test_logging_is_configured_once():
    logger = configure_logging("DEBUG")
    handlers = len(logger.handlers)
    assert configure_logging("info") is logger
    assert len(logger.handlers) == handlers
    assert logger.level == logging.INFO
    configure_logging("WARNING")
