"""
Structured logging setup for the ``gainloss`` command.

Logs go to stderr so that stdout only carries command output. Every record
is stamped with the run it belongs to (``command``, ``configSha256``,
``backend``) by ``RunContextFilter``; the JSON format then emits one object
per record with those fields first and every ``extra=`` field after them.
Numpy scalars and arrays and complex energies are written as plain JSON.
"""

import json
import logging
import sys
from datetime import datetime, timezone
from typing import Any

import numpy as np

#: Run fields, in output order.
RUN_FIELDS = ("command", "configSha256", "backend")

_run_context: dict[str, str] = {}


def bind_run_context(**fields: str) -> None:
    """Attach run fields to every later record, e.g. ``bind_run_context(command="sweep")``."""
    unknown = set(fields) - set(RUN_FIELDS)
    if unknown:
        raise ValueError(f"unknown run fields: {', '.join(sorted(unknown))}")
    _run_context.update({key: str(value) for key, value in fields.items()})


def clear_run_context() -> None:
    _run_context.clear()


class RunContextFilter(logging.Filter):
    """Copies the bound run fields onto each record; unbound fields read ``-``."""

    def filter(self, record: logging.LogRecord) -> bool:
        for key in RUN_FIELDS:
            if not hasattr(record, key):
                setattr(record, key, _run_context.get(key, "-"))
        return True


def _to_json(value: Any) -> Any:
    if isinstance(value, (complex, np.complexfloating)):
        return {"re": float(value.real), "im": float(value.imag)}
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, np.ndarray):
        if np.iscomplexobj(value):
            return [_to_json(item) for item in value.ravel()]
        return value.tolist()
    return str(value)


class StructuredJsonFormatter(logging.Formatter):
    """
    Formats log records as single-line JSON.

    Every log line includes timestamp (ISO 8601 UTC), level, logger,
    message and the run fields, followed by the extra fields of the
    record (``shift``, ``evaluations``, ``residualNorm``, ...).
    """

    # Standard LogRecord attributes, not forwarded as extra fields.
    _BUILTIN_ATTRS = frozenset(
        {
            "args",
            "asctime",
            "created",
            "exc_info",
            "exc_text",
            "filename",
            "funcName",
            "levelname",
            "levelno",
            "lineno",
            "module",
            "msecs",
            "message",
            "msg",
            "name",
            "pathname",
            "process",
            "processName",
            "relativeCreated",
            "stack_info",
            "taskName",
            "thread",
            "threadName",
        }
    ) | frozenset(RUN_FIELDS)

    def format(self, record: logging.LogRecord) -> str:
        log_entry = {
            "timestamp": datetime.fromtimestamp(record.created, tz=timezone.utc).isoformat(),
            "level": record.levelname,
            "logger": record.name,
            "message": record.getMessage(),
        }
        for key in RUN_FIELDS:
            value = getattr(record, key, "-")
            if value != "-":
                log_entry[key] = value

        for key, value in record.__dict__.items():
            if key not in self._BUILTIN_ATTRS and not key.startswith("_"):
                log_entry[key] = value

        if record.exc_info and record.exc_info[0] is not None:
            log_entry["exception"] = self.formatException(record.exc_info)

        return json.dumps(log_entry, default=_to_json, ensure_ascii=False)


def configure_logging(level: str = "INFO", json_format: bool = True) -> None:
    """
    Configure the root logger for a CLI run.

    Args:
        level: Level name, e.g. ``"INFO"`` or ``"DEBUG"``.
        json_format: Emit JSON lines when True, plain text otherwise.
    """
    root_logger = logging.getLogger()
    root_logger.setLevel(level)
    root_logger.handlers.clear()

    stderr_handler = logging.StreamHandler(sys.stderr)
    stderr_handler.addFilter(RunContextFilter())
    if json_format:
        stderr_handler.setFormatter(StructuredJsonFormatter())
    else:
        stderr_handler.setFormatter(
            logging.Formatter("%(asctime)s %(levelname)s %(name)s [%(command)s %(backend)s]: %(message)s")
        )
    root_logger.addHandler(stderr_handler)

    # Font cache and backend chatter
    logging.getLogger("matplotlib").setLevel(logging.WARNING)
