"""
Simple constants for the resource bounds used by the decision procedures.
These can be overridden by environment variables or a `.env` file.

Overrides are read when a setting is used, so a malformed value surfaces as
a SettingsError naming the variable instead of failing at import time.
"""
import logging
import os

from dotenv import load_dotenv

load_dotenv()

# Default settings - simple, easy to update in one place
DEFAULT_MONOID_LIMIT = 1_000_000
DEFAULT_WITNESS_LENGTH = 6
DEFAULT_LOG_LEVEL = "WARNING"

MONOID_LIMIT_VAR = "GROUPCODES_MONOID_LIMIT"
WITNESS_LENGTH_VAR = "GROUPCODES_WITNESS_LENGTH"
LOG_LEVEL_VAR = "GROUPCODES_LOG_LEVEL"


class SettingsError(ValueError):
    """An environment override does not hold a usable value."""


def _int_setting(name: str, default: int, minimum: int) -> int:
    raw = os.environ.get(name)
    if raw is None or not raw.strip():
        return default
    try:
        value = int(raw)
    except ValueError:
        raise SettingsError(f"{name} must be an integer, got '{raw}'") from None
    if value < minimum:
        raise SettingsError(f"{name} must be at least {minimum}, got {value}")
    return value


# Environment variable overrides - allows changing bounds without code changes
def monoid_limit() -> int:
    return _int_setting(MONOID_LIMIT_VAR, DEFAULT_MONOID_LIMIT, 1)


def witness_length() -> int:
    return _int_setting(WITNESS_LENGTH_VAR, DEFAULT_WITNESS_LENGTH, 0)


def log_level() -> str:
    level = (os.environ.get(LOG_LEVEL_VAR) or DEFAULT_LOG_LEVEL).strip().upper()
    if not isinstance(logging.getLevelName(level), int):
        raise SettingsError(f"{LOG_LEVEL_VAR} must be a logging level name, got '{level}'")
    return level
