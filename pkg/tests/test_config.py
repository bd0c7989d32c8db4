import logging
import os
import sys

import pytest

# Add root directory to sys.path
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from kronecker_cells.config import Settings
from kronecker_cells.exceptions import ConfigurationError

FIELDS = ["WORKERS", "TRIALS", "SEED", "LOG_LEVEL", "REPLAY_MAX_M", "REPLAY_CHOICES", "SIGN_SEARCH_MAX_TERMS"]


@pytest.fixture
def settings(monkeypatch):
    for name in FIELDS:
        monkeypatch.setattr(Settings, name, getattr(Settings, name))
        monkeypatch.delenv(f"KRONECKER_{name}", raising=False)
    return Settings


def test_reload_reads_environment(settings, monkeypatch):
    monkeypatch.setenv("KRONECKER_WORKERS", "4")
    monkeypatch.setenv("KRONECKER_TRIALS", "7")
    monkeypatch.setenv("KRONECKER_LOG_LEVEL", "debug")
    settings.reload()
    assert settings.WORKERS == 4
    assert settings.TRIALS == 7
    assert settings.LOG_LEVEL == "DEBUG"
    assert settings.SEED == 0
    settings.validate()


def test_bad_integer_falls_back_to_default(settings, monkeypatch, caplog):
    monkeypatch.setenv("KRONECKER_REPLAY_MAX_M", "seven")
    with caplog.at_level(logging.WARNING, logger="kronecker_cells.config"):
        settings.reload()
    assert settings.REPLAY_MAX_M == 7
    assert "KRONECKER_REPLAY_MAX_M" in caplog.text


@pytest.mark.parametrize(
    "name, value",
    [("WORKERS", 0), ("TRIALS", -1), ("REPLAY_CHOICES", -2), ("SIGN_SEARCH_MAX_TERMS", 30), ("LOG_LEVEL", "LOUD")],
)
def test_validate_rejects_out_of_range(settings, monkeypatch, name, value):
    monkeypatch.setattr(Settings, name, value)
    with pytest.raises(ConfigurationError):
        settings.validate()
