"""
Logging configuration for the spherical class engine.

Diagnostics always go to stderr; stdout is reserved for command output.
Standard-library loggers and structlog bound loggers share the same handlers.
"""

import json
import logging
import logging.config
import sys
import time
from datetime import datetime, timezone
from functools import wraps
from typing import Any, Dict, Optional

import structlog


_RESERVED_ATTRIBUTES = frozenset([
    "name", "msg", "args", "levelname", "levelno", "pathname",
    "filename", "module", "exc_info", "exc_text", "stack_info",
    "lineno", "funcName", "created", "msecs", "relativeCreated",
    "thread", "threadName", "processName", "process", "message",
    "taskName", "_logger", "_name", "_from_structlog", "_record",
])


class JSONFormatter(logging.Formatter):
    """JSON formatter for structured logging."""

    def format(self, record: logging.LogRecord) -> str:
        log_entry = {
            "timestamp": datetime.now(timezone.utc).isoformat(),
            "level": record.levelname,
            "logger": record.name,
            "message": record.getMessage(),
            "module": record.module,
            "function": record.funcName,
            "line": record.lineno,
        }

        if record.exc_info:
            log_entry["exception"] = self.formatException(record.exc_info)

        for key, value in record.__dict__.items():
            if key not in _RESERVED_ATTRIBUTES:
                log_entry[key] = value

        return json.dumps(log_entry, default=str, sort_keys=True)


class ColoredFormatter(logging.Formatter):
    """Colored formatter for interactive terminals."""

    COLORS = {
        'DEBUG': '\033[36m',
        'INFO': '\033[32m',
        'WARNING': '\033[33m',
        'ERROR': '\033[31m',
        'CRITICAL': '\033[35m',
        'RESET': '\033[0m'
    }

    def format(self, record: logging.LogRecord) -> str:
        color = self.COLORS.get(record.levelname, self.COLORS['RESET'])
        reset = self.COLORS['RESET']
        original = record.levelname
        record.levelname = f"{color}{original}{reset}"
        try:
            return super().format(record)
        finally:
            record.levelname = original


def _is_terminal(stream: Any) -> bool:
    isatty = getattr(stream, "isatty", None)
    return bool(isatty and isatty())


def _configure_structlog(use_json: bool) -> None:
    """Route structlog through the stdlib handlers configured below."""
    structlog.configure(
        processors=[
            structlog.contextvars.merge_contextvars,
            structlog.stdlib.filter_by_level,
            structlog.stdlib.add_logger_name,
            structlog.stdlib.add_log_level,
            structlog.processors.TimeStamper(fmt="iso", utc=True),
            structlog.processors.format_exc_info,
            structlog.stdlib.ProcessorFormatter.wrap_for_formatter,
        ],
        logger_factory=structlog.stdlib.LoggerFactory(),
        wrapper_class=structlog.stdlib.BoundLogger,
        cache_logger_on_first_use=True,
    )


def setup_logging(
    service_name: str = "spherical-monoid-engine",
    log_level: str = "WARNING",
    environment: str = "development"
) -> None:
    """
    Set up logging for the engine.

    Args:
        service_name: Name used to identify the process in logs
        log_level: Logging level (DEBUG, INFO, WARNING, ERROR, CRITICAL)
        environment: Environment (development, staging, production)
    """
    numeric_level = getattr(logging, log_level.upper(), logging.WARNING)
    use_json = environment.lower() in ["production", "staging"]
    if use_json:
        console_formatter = "json"
    else:
        console_formatter = "colored" if _is_terminal(sys.stderr) else "simple"
    renderer = (
        structlog.processors.JSONRenderer(sort_keys=True)
        if use_json
        else structlog.dev.ConsoleRenderer(colors=False)
    )

    config: Dict[str, Any] = {
        "version": 1,
        "disable_existing_loggers": False,
        "formatters": {
            "json": {
                "()": JSONFormatter,
            },
            "colored": {
                "()": ColoredFormatter,
                "format": "%(asctime)s | %(levelname)-8s | %(name)s:%(lineno)d | %(message)s",
                "datefmt": "%Y-%m-%d %H:%M:%S"
            },
            "simple": {
                "format": "%(asctime)s | %(levelname)-8s | %(name)s:%(lineno)d | %(message)s",
                "datefmt": "%Y-%m-%d %H:%M:%S"
            },
            "structured": {
                "()": structlog.stdlib.ProcessorFormatter,
                "processors": [
                    structlog.stdlib.ProcessorFormatter.remove_processors_meta,
                    renderer,
                ],
            },
        },
        "handlers": {
            "console": {
                "class": "logging.StreamHandler",
                "stream": sys.stderr,
                "formatter": console_formatter,
                "level": numeric_level
            },
            "structured_console": {
                "class": "logging.StreamHandler",
                "stream": sys.stderr,
                "formatter": "structured",
                "level": numeric_level
            },
        },
        "loggers": {
            "": {
                "level": numeric_level,
                "handlers": ["console"],
                "propagate": False
            },
            "app": {
                "level": numeric_level,
                "handlers": ["console"],
                "propagate": False
            },
            "app.services.verify": {
                "level": numeric_level,
                "handlers": ["structured_console"],
                "propagate": False
            },
            "asyncio": {
                "level": "WARNING",
                "handlers": ["console"],
                "propagate": False
            },
        }
    }

    logging.config.dictConfig(config)
    _configure_structlog(use_json)

    logger = logging.getLogger("app.logging")
    logger.info(
        f"Logging configured for {service_name}",
        extra={
            "service": service_name,
            "log_level": log_level,
            "environment": environment,
            "json_format": use_json
        }
    )


class LoggerAdapter(logging.LoggerAdapter):
    """Logger adapter that adds service context to all log messages."""

    def __init__(self, logger: logging.Logger, service_name: str, version: str):
        super().__init__(logger, {})
        self.service_name = service_name
        self.version = version

    def process(self, msg: str, kwargs: dict) -> tuple:
        extra = kwargs.get("extra", {})
        extra.update({
            "service": self.service_name,
            "version": self.version
        })
        kwargs["extra"] = extra
        return msg, kwargs


def create_service_logger(
    name: str,
    service_name: str = "spherical-monoid-engine",
    version: str = "1.0.0"
) -> LoggerAdapter:
    return LoggerAdapter(logging.getLogger(name), service_name, version)


class OperationContext:
    """
    Context manager logging the start, end and duration of one command.

    Args:
        logger: Logger or adapter to write to
        operation: Name of the command being run
        details: Extra fields attached to every record
    """

    def __init__(self, logger: Any, operation: str, details: Optional[Dict[str, Any]] = None):
        self.logger = logger
        self.operation = operation
        self.details = dict(details or {})
        self.start_time: Optional[float] = None
        self.duration: Optional[float] = None

    def __enter__(self) -> "OperationContext":
        self.start_time = time.perf_counter()
        self.logger.info(
            f"Starting {self.operation}",
            extra={"operation": self.operation, **self.details}
        )
        return self

    def __exit__(self, exc_type, exc_val, exc_tb) -> None:
        self.duration = time.perf_counter() - (self.start_time or 0.0)

        if exc_type:
            self.logger.error(
                f"Failed {self.operation}",
                extra={
                    "operation": self.operation,
                    "duration_seconds": self.duration,
                    "error": str(exc_val),
                    **self.details
                }
            )
        else:
            self.logger.info(
                f"Completed {self.operation}",
                extra={
                    "operation": self.operation,
                    "duration_seconds": self.duration,
                    **self.details
                }
            )


def log_performance(logger: logging.Logger):
    """Decorator logging the duration of expensive builders at DEBUG level."""

    def decorator(func):
        @wraps(func)
        def wrapper(*args, **kwargs):
            start_time = time.perf_counter()
            function_name = f"{func.__module__}.{func.__name__}"

            try:
                result = func(*args, **kwargs)
            except Exception as e:
                logger.error(
                    f"Function execution failed: {function_name}",
                    extra={
                        "function": function_name,
                        "duration_seconds": time.perf_counter() - start_time,
                        "success": False,
                        "error": str(e)
                    }
                )
                raise

            logger.debug(
                f"Function executed successfully: {function_name}",
                extra={
                    "function": function_name,
                    "duration_seconds": time.perf_counter() - start_time,
                    "success": True
                }
            )
            return result

        return wrapper
    return decorator
