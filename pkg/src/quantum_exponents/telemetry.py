"""
Structured logging and telemetry for trace and experiment events.
"""
import json
import logging
import time
from contextlib import contextmanager
from typing import Any, Generator, Optional

import numpy as np

_logger = logging.getLogger("quantum_exponents.telemetry")


def json_default(value: Any) -> Any:
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, np.ndarray):
        return value.tolist()
    return str(value)


def log_event(event_type: str, level: int = logging.INFO, **kwargs: Any) -> None:
    """Emit a structured JSON log line for a telemetry event."""
    if not _logger.isEnabledFor(level):
        return
    payload = {"event": event_type, **kwargs}
    _logger.log(level, json.dumps(payload, default=json_default))


@contextmanager
def timed_event(event_type: str, **kwargs: Any) -> Generator[None, None, None]:
    """
    Log event_type with elapsed_ms when the block exits.

    An exception escaping the block is re-raised; the event is then logged
    at WARNING with its type name under "error".
    """
    start = time.perf_counter()
    error: Optional[str] = None
    try:
        yield
    except Exception as exc:
        error = type(exc).__name__
        raise
    finally:
        fields = dict(kwargs, elapsed_ms=round((time.perf_counter() - start) * 1000, 1))
        if error is not None:
            fields["error"] = error
        log_event(event_type, level=logging.WARNING if error else logging.INFO, **fields)
