"""Application context for dependency injection."""

from __future__ import annotations

import hashlib
from dataclasses import dataclass

from app.config.settings import EngineSettings, resolve_engine_settings
from app.infrastructure.logging import StructuredLogger, get_logger


def derive_trace_id(*parts: object) -> str:
    """Stable trace id so reruns with equal inputs log under the same id."""
    raw = "|".join(str(p) for p in parts)
    return hashlib.sha256(raw.encode("utf-8")).hexdigest()[:8]


@dataclass
class AppContext:
    settings: EngineSettings
    logger: StructuredLogger
    include_timings: bool = False


def make_app_context(
    *,
    trace_id: str | None = None,
    include_timings: bool = False,
    **overrides,
) -> AppContext:
    return AppContext(
        settings=resolve_engine_settings(**overrides),
        logger=get_logger(trace_id),
        include_timings=include_timings,
    )
