import os
import logging
from pathlib import Path
from logging.handlers import TimedRotatingFileHandler

from .console import ShortLevelFormatter, rich_handler

_logger: logging.Logger = logging.getLogger("rtgq")

LEVELS = {"debug": logging.DEBUG, "info": logging.INFO, "warning": logging.WARNING}

# <repo>/logs, next to src/
LOG_DIR = Path(__file__).resolve().parents[3] / "logs"


def _rotating(name: str, level: int, formatter: logging.Formatter) -> logging.Handler:
    handler = TimedRotatingFileHandler(LOG_DIR / name, when="midnight", backupCount=5, encoding="utf-8")
    handler.setLevel(level)
    handler.setFormatter(formatter)
    return handler


def _setup_handlers(level: int) -> None:
    root = logging.getLogger()
    # close before removing, repeated setup must not leak file handles or duplicate lines
    for handler in root.handlers[:]:
        handler.close()
        root.removeHandler(handler)

    formatter = ShortLevelFormatter(
        "[%(asctime)s.%(msecs)03d][%(shortlevel)s] %(name)s: %(message)s",
        datefmt="%Y-%m-%d %H:%M:%S",
    )
    rich_handler.setLevel(level)
    rich_handler.setFormatter(formatter)
    root.addHandler(rich_handler)

    if os.getenv("RTGQ_ENVIRONMENT", "production").lower() in ("development", "test"):
        LOG_DIR.mkdir(parents=True, exist_ok=True)
        root.addHandler(_rotating("error.log", logging.ERROR, formatter))
        root.addHandler(_rotating("debug.log", logging.DEBUG, formatter))

    root.setLevel(level)


def setup_logging() -> None:
    """Configure logging from RTGQ_LOG (`debug` | `info` | `warning`, default `info`)."""
    level = LEVELS.get(os.environ.get("RTGQ_LOG", "info").lower(), logging.INFO)
    _setup_handlers(level)
    _logger.setLevel(level)


def set_log_level(level: int) -> None:
    """Override the level picked by setup_logging, e.g. from a --verbose flag."""
    rich_handler.setLevel(level)
    logging.getLogger().setLevel(level)
    _logger.setLevel(level)
