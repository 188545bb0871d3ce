import logging
import os
from pathlib import Path
from typing import Optional

from dotenv import load_dotenv

load_dotenv()
logger = logging.getLogger(__name__)

PACKAGE_DATA_DIR = Path(__file__).resolve().parent / "data"

_LOG_LEVELS = ("CRITICAL", "ERROR", "WARNING", "INFO", "DEBUG")


def data_dir() -> Path:
    """Directory holding `architectures/`. QROUTE_DATA_DIR wins over the bundled copy."""
    override = os.getenv("QROUTE_DATA_DIR")
    if override:
        return Path(override)
    return PACKAGE_DATA_DIR


def architectures_dir() -> Path:
    return data_dir() / "architectures"


def log_level() -> str:
    level = os.getenv("QROUTE_LOG_LEVEL", "INFO").upper()
    if level not in _LOG_LEVELS:
        logger.critical(f"Invalid QROUTE_LOG_LEVEL: '{level}'")
        raise ValueError(f"QROUTE_LOG_LEVEL must be one of {', '.join(_LOG_LEVELS)}, got '{level}'")
    return level


def log_file() -> Optional[str]:
    value = os.getenv("QROUTE_LOG_FILE", "qroute.log")
    return value or None


def broker_url() -> Optional[str]:
    return os.getenv("QROUTE_BROKER_URL") or None


def result_backend() -> Optional[str]:
    return os.getenv("QROUTE_RESULT_BACKEND") or None


def compare_timeout() -> int:
    raw = os.getenv("QROUTE_COMPARE_TIMEOUT", "600")
    try:
        value = int(raw)
    except ValueError as e:
        logger.critical(f"QROUTE_COMPARE_TIMEOUT is not an integer: '{raw}'")
        raise ValueError(f"QROUTE_COMPARE_TIMEOUT must be an integer, got '{raw}'") from e
    if value <= 0:
        raise ValueError("QROUTE_COMPARE_TIMEOUT must be positive")
    return value
