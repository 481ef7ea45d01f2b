"""Application request/response contracts."""

from __future__ import annotations

from enum import Enum
from typing import Any, Optional

from pydantic import BaseModel, Field

from app.config.runtime_fingerprint import RunFingerprint
from app.domain.enums import ChainKind, ModelFamily


class RunStatus(str, Enum):
    DONE = "done"
    ERROR = "error"


class ExactRequest(BaseModel):
    model_path: str
    census_path: Optional[str] = None
    marginals: bool = False
    threads: int = Field(default=1, ge=1)


class SampleRequest(BaseModel):
    model_path: str
    seed: int
    kind: ChainKind = ChainKind.ORBIT_JUMP
    iterations: int = Field(default=1000, ge=1)
    burn_in: int = Field(default=0, ge=0)
    thinning: int = Field(default=1, ge=1)
    burnside_steps: Optional[int] = None
    gibbs_updates: Optional[int] = Field(default=None, ge=1)
    samples_path: Optional[str] = None


class TVEvalRequest(BaseModel):
    model_path: str
    T: int = Field(default=200, ge=0)
    k: Optional[int] = None
    start_bits: Optional[str] = None
    out_path: Optional[str] = None


class BenchRequest(BaseModel):
    family: ModelFamily
    sizes: list[int]
    holes: int = Field(default=2, ge=1)
    soft_w: float = 2.0
    pair_table: tuple[float, float, float] = (1.0, 0.0, 1.0)
    ev_table: tuple[float, float] = (0.0, 1.0)
    out_path: Optional[str] = None


class RunReport(BaseModel):
    """Decimal strings carry exact integers and log Z."""

    command: str
    status: RunStatus = RunStatus.DONE
    inputs: dict[str, Any] = Field(default_factory=dict)
    seed: Optional[int] = None
    results: dict[str, Any] = Field(default_factory=dict)
    timings: Optional[dict[str, float]] = None
    message: str = ""
    trace_id: str = ""
    run_fingerprint: Optional[RunFingerprint] = None
