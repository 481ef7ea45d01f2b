"""Engine settings resolved from the environment."""

from __future__ import annotations

import os
from pathlib import Path

from pydantic import BaseModel, Field

from app.domain import constants
from app.domain.exceptions import ConfigurationError

_TRUTHY = {"1", "true", "yes", "on"}


def _is_enabled(value: str | None) -> bool:
    return bool(value and value.strip().lower() in _TRUTHY)


def _is_configured(value: str | None) -> bool:
    return bool(value and value.strip())


def _int_env(name: str, default: int) -> int:
    raw = os.getenv(name)
    if not _is_configured(raw):
        return default
    try:
        return int(raw.strip())
    except ValueError as exc:
        raise ConfigurationError(f"{name} must be an integer, got {raw!r}") from exc


class EngineSettings(BaseModel):
    brute_force_cap: int = Field(default=constants.BRUTE_FORCE_CAP, ge=1, le=30)
    kernel_state_cap: int = Field(default=constants.KERNEL_STATE_CAP, ge=1, le=16)
    element_cap: int = Field(default=constants.ELEMENT_CAP, ge=1)
    pr_slots: int = Field(default=constants.PR_SLOTS, ge=2)
    pr_burn_in: int = Field(default=constants.PR_BURN_IN, ge=0)
    pr_steps_per_draw: int = Field(default=constants.PR_STEPS_PER_DRAW, ge=1)
    burnside_pr_burn_in: int = Field(default=constants.BURNSIDE_PR_BURN_IN, ge=0)
    burnside_steps: int = Field(default=constants.BURNSIDE_STEPS, ge=1)
    lifted_gibbs_updates: int = Field(default=1, ge=1)
    threads: int = Field(default=1, ge=1)
    automorphism_pruning: bool = Field(default=True)
    debug_checks: bool = Field(default=False)
    env_source: str = Field(default=".env")


def resolve_env_source() -> str:
    hint = str(os.getenv("ENV_FILE") or os.getenv("DOTENV_FILE") or "").strip()
    if hint:
        return Path(hint).name or hint
    return ".env"


def resolve_engine_settings(**overrides) -> EngineSettings:
    """Environment first, explicit keyword overrides win. ``None`` overrides
    are ignored so CLI flags can be passed through unconditionally."""
    values = {
        "brute_force_cap": _int_env("LIFTED_BRUTE_FORCE_CAP", constants.BRUTE_FORCE_CAP),
        "kernel_state_cap": _int_env("LIFTED_KERNEL_STATE_CAP", constants.KERNEL_STATE_CAP),
        "element_cap": _int_env("LIFTED_ELEMENT_CAP", constants.ELEMENT_CAP),
        "pr_slots": _int_env("LIFTED_PR_SLOTS", constants.PR_SLOTS),
        "pr_burn_in": _int_env("LIFTED_PR_BURN_IN", constants.PR_BURN_IN),
        "pr_steps_per_draw": _int_env("LIFTED_PR_STEPS_PER_DRAW", constants.PR_STEPS_PER_DRAW),
        "burnside_pr_burn_in": _int_env(
            "LIFTED_BURNSIDE_PR_BURN_IN", constants.BURNSIDE_PR_BURN_IN
        ),
        "burnside_steps": _int_env("LIFTED_BURNSIDE_STEPS", constants.BURNSIDE_STEPS),
        "lifted_gibbs_updates": _int_env("LIFTED_GIBBS_UPDATES", 1),
        "threads": _int_env("LIFTED_THREADS", 1),
        "automorphism_pruning": not _is_enabled(os.getenv("LIFTED_DISABLE_AUT_PRUNING")),
        "debug_checks": _is_enabled(os.getenv("LIFTED_DEBUG_CHECKS")),
        "env_source": resolve_env_source(),
    }
    values.update({key: value for key, value in overrides.items() if value is not None})
    try:
        return EngineSettings(**values)
    except ValueError as exc:
        raise ConfigurationError(str(exc)) from exc


__all__ = [
    "EngineSettings",
    "resolve_engine_settings",
]
