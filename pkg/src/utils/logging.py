"""Structured logging configuration."""

import logging
import sys
from contextlib import AbstractContextManager
from typing import Any, Optional

import structlog

from ..config.settings import get_settings


def configure_logging(level: Optional[str] = None) -> None:
    """
    Configure structured logging.

    Console output by default; JSON lines at DEBUG, where per-iteration events are
    emitted and are easier to filter as records.

    Args:
        level: Log level override; defaults to the settings value
    """
    log_level = (level or get_settings().log_level).upper()
    if not isinstance(logging.getLevelName(log_level), int):
        log_level = "INFO"

    structlog.configure(
        processors=[
            structlog.contextvars.merge_contextvars,
            structlog.processors.add_log_level,
            structlog.processors.TimeStamper(fmt="iso"),
            structlog.processors.StackInfoRenderer(),
            structlog.dev.set_exc_info,
            structlog.processors.JSONRenderer() if log_level == "DEBUG" else structlog.dev.ConsoleRenderer(),
        ],
        wrapper_class=structlog.make_filtering_bound_logger(logging.getLevelName(log_level)),
        context_class=dict,
        # stdout is reserved for CLI summaries
        logger_factory=structlog.PrintLoggerFactory(file=sys.stderr),
        cache_logger_on_first_use=False,
    )

    logging.basicConfig(format="%(message)s", stream=sys.stderr, level=logging.getLevelName(log_level))


def experiment_context(name: str, kind: str) -> AbstractContextManager:
    """Tag every event logged inside the block with the experiment name and kind."""
    return structlog.contextvars.bound_contextvars(experiment=name, kind=kind)


def get_logger(name: str) -> Any:
    """Get a structured logger for the given name."""
    return structlog.get_logger(name)
