"""
Unit tests for the JSON-line telemetry helpers.
"""
import json
import logging

import pytest


@pytest.fixture(autouse=True)
def _import_guard():
    try:
        import quantum_exponents.telemetry  # noqa: F401
    except ImportError as exc:
        pytest.skip(f"quantum_exponents not installed: {exc}")


def _payloads(caplog):
    return [json.loads(r.getMessage()) for r in caplog.records if r.name == "quantum_exponents.telemetry"]


# ── log_event ─────────────────────────────────────────────────────────────────

def test_event_carries_numpy_values(caplog):
    import numpy as np
    from quantum_exponents.telemetry import log_event
    caplog.set_level(logging.INFO, logger="quantum_exponents.telemetry")
    log_event("exponent_fit", lambda_=np.float64(0.5), n_range=np.array([2, 3]))
    assert _payloads(caplog) == [{"event": "exponent_fit", "lambda_": 0.5, "n_range": [2, 3]}]


def test_disabled_level_is_skipped(caplog):
    from quantum_exponents.telemetry import log_event
    caplog.set_level(logging.INFO, logger="quantum_exponents.telemetry")
    log_event("trace_step", level=logging.DEBUG, n=1)
    assert _payloads(caplog) == []


# ── timed_event ───────────────────────────────────────────────────────────────

def test_timed_event_reports_elapsed(caplog):
    from quantum_exponents.telemetry import timed_event
    caplog.set_level(logging.INFO, logger="quantum_exponents.telemetry")
    with timed_event("experiment_run", preset="cat"):
        pass
    (payload,) = _payloads(caplog)
    assert payload["event"] == "experiment_run"
    assert payload["preset"] == "cat"
    assert payload["elapsed_ms"] >= 0.0
    assert "error" not in payload


def test_timed_event_marks_failures(caplog):
    from quantum_exponents.telemetry import timed_event
    caplog.set_level(logging.INFO, logger="quantum_exponents.telemetry")
    with pytest.raises(KeyError):
        with timed_event("sweep_run"):
            raise KeyError("n_max")
    (record,) = [r for r in caplog.records if r.name == "quantum_exponents.telemetry"]
    assert record.levelno == logging.WARNING
    assert json.loads(record.getMessage())["error"] == "KeyError"
