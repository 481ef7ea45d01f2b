"""Run fingerprint schema and builder."""

from __future__ import annotations

import platform
from importlib import metadata
from typing import Any, Optional

from pydantic import BaseModel, Field

from app.config.settings import EngineSettings

PACKAGE_NAME = "lifted-orbits"


def _package_version() -> str:
    try:
        return metadata.version(PACKAGE_NAME)
    except metadata.PackageNotFoundError:
        return "0.0.0+local"


class RunFingerprint(BaseModel):
    package_version: str = Field(default="0.0.0+local")
    python_version: str = Field(default="")
    threads: int = Field(default=1)
    seed: Optional[int] = Field(default=None)
    settings: dict[str, Any] = Field(default_factory=dict)
    trace_id: str = Field(default="")


def build_run_fingerprint(
    *,
    trace_id: str,
    settings: EngineSettings,
    seed: int | None = None,
) -> RunFingerprint:
    return RunFingerprint(
        package_version=_package_version(),
        python_version=platform.python_version(),
        threads=settings.threads,
        seed=seed,
        settings=settings.model_dump(),
        trace_id=trace_id,
    )


__all__ = [
    "RunFingerprint",
    "build_run_fingerprint",
]
