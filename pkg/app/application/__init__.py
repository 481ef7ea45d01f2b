"""Application orchestration layer."""

from app.application.contracts import RunReport
from app.application.workflows import run_bench, run_exact, run_generate, run_sample, run_tveval

__all__ = ["RunReport", "run_bench", "run_exact", "run_generate", "run_sample", "run_tveval"]
