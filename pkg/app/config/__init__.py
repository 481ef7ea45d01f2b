"""Runtime configuration helpers."""

from app.config.runtime_fingerprint import RunFingerprint, build_run_fingerprint
from app.config.settings import EngineSettings, resolve_engine_settings

__all__ = [
    "EngineSettings",
    "RunFingerprint",
    "build_run_fingerprint",
    "resolve_engine_settings",
]
