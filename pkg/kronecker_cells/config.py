import logging
import os

from dotenv import load_dotenv

from .exceptions import ConfigurationError

logger = logging.getLogger(__name__)

# Load environment variables
load_dotenv()


def _env_int(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return int(raw)
    except ValueError:
        logger.warning(f"{name}={raw!r} is not an integer, using {default}")
        return default


class Settings:
    WORKERS = _env_int("KRONECKER_WORKERS", 1)
    TRIALS = _env_int("KRONECKER_TRIALS", 20)
    SEED = _env_int("KRONECKER_SEED", 0)
    LOG_LEVEL = os.getenv("KRONECKER_LOG_LEVEL", "WARNING").upper()
    REPLAY_MAX_M = _env_int("KRONECKER_REPLAY_MAX_M", 7)
    REPLAY_CHOICES = _env_int("KRONECKER_REPLAY_CHOICES", 5)
    SIGN_SEARCH_MAX_TERMS = _env_int("KRONECKER_SIGN_SEARCH_MAX_TERMS", 16)

    @classmethod
    def reload(cls) -> None:
        """Re-read every setting from the current environment."""
        cls.WORKERS = _env_int("KRONECKER_WORKERS", 1)
        cls.TRIALS = _env_int("KRONECKER_TRIALS", 20)
        cls.SEED = _env_int("KRONECKER_SEED", 0)
        cls.LOG_LEVEL = os.getenv("KRONECKER_LOG_LEVEL", "WARNING").upper()
        cls.REPLAY_MAX_M = _env_int("KRONECKER_REPLAY_MAX_M", 7)
        cls.REPLAY_CHOICES = _env_int("KRONECKER_REPLAY_CHOICES", 5)
        cls.SIGN_SEARCH_MAX_TERMS = _env_int("KRONECKER_SIGN_SEARCH_MAX_TERMS", 16)

    @classmethod
    def validate(cls) -> None:
        """Validates ranges of the numeric settings."""
        if cls.WORKERS < 1:
            raise ConfigurationError("KRONECKER_WORKERS must be at least 1.")
        if cls.TRIALS < 0:
            raise ConfigurationError("KRONECKER_TRIALS must be non-negative.")
        if cls.REPLAY_CHOICES < 0:
            raise ConfigurationError("KRONECKER_REPLAY_CHOICES must be non-negative.")
        if not 0 <= cls.SIGN_SEARCH_MAX_TERMS <= 24:
            raise ConfigurationError("KRONECKER_SIGN_SEARCH_MAX_TERMS must lie in [0, 24].")
        if logging.getLevelName(cls.LOG_LEVEL) == f"Level {cls.LOG_LEVEL}":
            raise ConfigurationError(f"Unknown log level {cls.LOG_LEVEL!r}.")
