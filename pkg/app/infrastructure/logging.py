"""Structured logging: one JSON object per line on stderr."""

from __future__ import annotations

import json
import os
import sys
import time
import uuid
from contextlib import contextmanager
from typing import Any, Iterator, Optional


def _is_enabled(value: str | None, default: bool = True) -> bool:
    if value is None:
        return default
    return value.strip().lower() in {"1", "true", "yes", "on"}


class StructuredLogger:
    def __init__(self, trace_id: Optional[str] = None, output=None, enabled: bool | None = None):
        self.trace_id = trace_id or str(uuid.uuid4())[:8]
        self._output = output
        self._timers: dict[str, float] = {}
        self.enabled = (
            _is_enabled(os.getenv("LIFTED_LOG")) if enabled is None else enabled
        )

    def _emit(self, data: dict[str, Any]) -> None:
        if not self.enabled:
            return
        data["trace_id"] = self.trace_id
        data["timestamp"] = time.time()
        output = self._output or sys.stderr
        try:
            output.write(json.dumps(data, ensure_ascii=False, default=str) + "\n")
            output.flush()
        except Exception as exc:
            # Last-resort fallback to avoid silent logger failures.
            try:
                fallback = {
                    "event": "logger_internal_error",
                    "trace_id": self.trace_id,
                    "timestamp": time.time(),
                    "error": str(exc),
                }
                sys.stderr.write(json.dumps(fallback, default=str) + "\n")
                sys.stderr.flush()
            except Exception:
                return

    def stage_start(self, stage: str, **extra: Any) -> None:
        self._timers[stage] = time.perf_counter()
        self._emit({"event": "stage_start", "stage": stage, **extra})

    def stage_end(self, stage: str, **extra: Any) -> float:
        start = self._timers.pop(stage, time.perf_counter())
        duration_ms = round((time.perf_counter() - start) * 1000, 1)
        self._emit({"event": "stage_end", "stage": stage, "duration_ms": duration_ms, **extra})
        return duration_ms

    @contextmanager
    def stage(self, stage: str, **extra: Any) -> Iterator[dict[str, Any]]:
        """Brackets a block with stage events; the yielded dict is merged
        into the ``stage_end`` payload."""
        result: dict[str, Any] = {}
        self.stage_start(stage, **extra)
        try:
            yield result
        finally:
            self.stage_end(stage, **result)

    def counter(self, name: str, value: int | float, **extra: Any) -> None:
        self._emit({"event": "counter", "name": name, "value": value, **extra})

    def error(self, stage: str, error: str, **extra: Any) -> None:
        self._emit({"event": "error", "stage": stage, "error": error, **extra})

    def warning(self, stage: str, message: str, **extra: Any) -> None:
        self._emit({"event": "warning", "stage": stage, "message": message, **extra})

    def summary(self, **extra: Any) -> None:
        self._emit({"event": "summary", **extra})


_logger: Optional[StructuredLogger] = None


def get_logger(trace_id: Optional[str] = None) -> StructuredLogger:
    global _logger
    if _logger is None or (trace_id and _logger.trace_id != trace_id):
        _logger = StructuredLogger(trace_id=trace_id)
    return _logger


def reset_logger() -> None:
    global _logger
    _logger = None
