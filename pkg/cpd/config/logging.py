"""
Structured logging configuration.

Features:
- JSON format for batch runs (machine-parseable)
- Console format for interactive use (human-readable)
- Numpy sanitation so arrays and numpy scalars render as plain values
- Context binding for the running command, graph and dimension

Logs are written to stderr; stdout is reserved for reports so that repeated
runs produce byte-identical output.
"""

import logging
import sys
from typing import Any, TextIO

import numpy as np
import structlog
from structlog.types import EventDict, Processor

# Arrays longer than this are summarised instead of dumped
MAX_LOGGED_ARRAY = 8


def _sanitize_value(value: Any) -> Any:
    """Recursively convert numpy values into JSON-friendly Python values."""
    if isinstance(value, np.ndarray):
        if value.size > MAX_LOGGED_ARRAY:
            return {
                "shape": list(value.shape),
                "dtype": str(value.dtype),
                "max_abs": float(np.max(np.abs(value))) if value.size else 0.0,
            }
        return _sanitize_value(value.tolist())
    if isinstance(value, np.generic):
        return _sanitize_value(value.item())
    if isinstance(value, complex):
        return {"re": value.real, "im": value.imag}
    if isinstance(value, dict):
        return {k: _sanitize_value(v) for k, v in value.items()}
    if isinstance(value, list | tuple):
        return [_sanitize_value(item) for item in value]
    return value


def sanitize_numeric(
    logger: logging.Logger, method_name: str, event_dict: EventDict
) -> EventDict:
    """
    Structlog processor that converts numpy objects in log events.

    Keeps the JSON renderer from failing on ndarray/np.float64 values and
    keeps large arrays out of the log stream.
    """
    return {key: _sanitize_value(value) for key, value in event_dict.items()}


def add_service_context(
    logger: logging.Logger, method_name: str, event_dict: EventDict
) -> EventDict:
    """Add service-level context to all log events."""
    event_dict.setdefault("service", "cpd")
    return event_dict


def _stderr_logger(*args: Any) -> structlog.PrintLogger:
    """Logger bound to whatever sys.stderr is when the logger is created."""
    return structlog.PrintLogger(file=sys.stderr)


def configure_logging(
    *,
    json_format: bool = False,
    log_level: str = "INFO",
    stream: TextIO | None = None,
) -> None:
    """
    Configure structured logging for the library and CLI.

    Args:
        json_format: If True, output JSON logs.
                    If False, output colored console logs.
        log_level: Minimum log level to output.
        stream: Destination stream, stderr by default.
    """
    target = stream if stream is not None else sys.stderr

    shared_processors: list[Processor] = [
        structlog.contextvars.merge_contextvars,
        structlog.processors.add_log_level,
        structlog.processors.TimeStamper(fmt="iso"),
        add_service_context,
        sanitize_numeric,
        structlog.processors.StackInfoRenderer(),
        structlog.processors.UnicodeDecoder(),
    ]

    if json_format:
        processors: list[Processor] = [
            *shared_processors,
            structlog.processors.format_exc_info,
            structlog.processors.JSONRenderer(),
        ]
    else:
        processors = [
            *shared_processors,
            structlog.dev.ConsoleRenderer(colors=target.isatty()),
        ]

    structlog.configure(
        processors=processors,
        wrapper_class=structlog.make_filtering_bound_logger(
            getattr(logging, log_level.upper())
        ),
        context_class=dict,
        logger_factory=(
            structlog.PrintLoggerFactory(file=stream)
            if stream is not None
            else _stderr_logger
        ),
        cache_logger_on_first_use=False,
    )

    logging.basicConfig(
        format="%(message)s",
        stream=target,
        level=getattr(logging, log_level.upper()),
    )


def get_logger(name: str | None = None, **bindings: Any) -> Any:
    """
    Get a structured logger with optional context binding.

    Args:
        name: Logger name (typically module name).
        **bindings: Key/value context attached to every event.

    Returns:
        Bound logger with context.

    Example:
        logger = get_logger(__name__, graph="ladder", d=1)
        logger.info("Scan complete", points=32)
    """
    logger = structlog.get_logger(name)
    if bindings:
        logger = logger.bind(**bindings)
    return logger


def bind_context(**kwargs: Any) -> None:
    """
    Bind context variables that will be included in all subsequent logs.

    Example:
        bind_context(command="verify", d=2)
        logger.info("This log will include command and d")
    """
    structlog.contextvars.bind_contextvars(**kwargs)


def clear_context() -> None:
    """Clear all bound context variables."""
    structlog.contextvars.clear_contextvars()
