"""Single entrypoints for the command-line workflows.

Each ``run_*`` function loads its inputs, drives the engine and returns a
``RunReport``; file outputs are written as a side effect when a path is
given. Reports never carry wall-clock data unless the context asks for it,
so reruns with equal inputs and seed serialize identically.
"""

from __future__ import annotations

import csv
import time
from pathlib import Path
from typing import Any

from app.application.context import AppContext
from app.application.contracts import (
    BenchRequest,
    ExactRequest,
    RunReport,
    SampleRequest,
    TVEvalRequest,
)
from app.config.runtime_fingerprint import build_run_fingerprint
from app.domain.enums import ChainKind
from app.domain.exceptions import NoSatisfyingState, StateSpaceTooLarge
from app.domain.generators import generate_family
from app.domain.models import EvidencePredicate, Model
from app.domain.scoring import assignment_from_bits, assignment_to_bits
from app.eval.kernels import KernelContext
from app.eval.mixing import tv_table, write_tv_csv
from app.eval.oracle import brute_force
from app.graph.canon import ModelSymmetry
from app.inference.exact import (
    check_evidence_invariant,
    generate_orbits,
    marginals,
    mpe,
    partition_function,
    prob_evidence,
    write_census_jsonl,
)
from app.inference.sampler import ChainConfig, run_chain, write_samples_csv
from app.parsing.model_format import load_model, parse_evidence, save_model

BENCH_COLUMNS = (
    "size",
    "num_vars",
    "wall_seconds",
    "orbit_count",
    "certificate_calls",
    "log_z",
    "brute_force_seconds",
    "brute_force_log_z",
)

_REPORTED_BENCH_COLUMNS = ("size", "num_vars", "orbit_count", "certificate_calls", "log_z")

def _report(
    ctx: AppContext, command: str, inputs: dict[str, Any], *, seed: int | None = None
) -> RunReport:
    return RunReport(
        command=command,
        inputs=inputs,
        seed=seed,
        trace_id=ctx.logger.trace_id,
        run_fingerprint=build_run_fingerprint(
            trace_id=ctx.logger.trace_id, settings=ctx.settings, seed=seed
        ),
    )


def _finish(ctx: AppContext, report: RunReport, timings: dict[str, float]) -> RunReport:
    if ctx.include_timings:
        report.timings = {key: round(value, 6) for key, value in timings.items()}
    ctx.logger.summary(command=report.command, status=report.status.value)
    return report


def run_generate(
    ctx: AppContext,
    family: str,
    size: int,
    out_path: str,
    *,
    evidence: str | None = None,
    **params: Any,
) -> RunReport:
    m = generate_family(family, size, **params)
    if evidence:
        m = m.with_evidence(parse_evidence(evidence, m.num_vars))
    save_model(m, out_path)
    report = _report(ctx, "generate", {"family": str(family), "size": size, **params})
    report.results = {
        "model_path": str(out_path),
        "num_vars": m.num_vars,
        "clauses": len(m.clauses),
        "factors": len(m.factors),
    }
    return _finish(ctx, report, {})


def run_exact(ctx: AppContext, request: ExactRequest) -> RunReport:
    """Orbit census, then log Z, P(evidence) and the MPE state from it."""
    settings = ctx.settings
    started = time.perf_counter()
    m = load_model(request.model_path)
    symmetry = ModelSymmetry(m, prune=settings.automorphism_pruning)
    check_evidence_invariant(m, symmetry.root.generators)
    census = generate_orbits(
        m,
        threads=request.threads,
        debug_checks=settings.debug_checks,
        symmetry=symmetry,
    )
    census_done = time.perf_counter()
    log_z = partition_function(census)
    p_evidence = prob_evidence(m, census, symmetry=symmetry)
    try:
        best, best_score = mpe(m, census, symmetry=symmetry)
        mpe_bits: str | None = assignment_to_bits(best)
    except NoSatisfyingState:
        # P(evidence) = 0 is still a valid answer
        mpe_bits, best_score = None, None

    report = _report(ctx, "exact", request.model_dump(mode="json", exclude={"threads"}))
    report.results = {
        "num_vars": m.num_vars,
        "log_z": repr(log_z),
        "prob_evidence": p_evidence,
        "mpe_bits": mpe_bits,
        "mpe_log_score": best_score,
        "orbit_count": census.num_orbits,
        "certificate_calls": census.stats.certificate_calls,
        "aut_order": str(census.aut_order),
    }
    if request.marginals:
        report.results["marginals"] = marginals(census)
    if request.census_path:
        write_census_jsonl(census, request.census_path)
    finished = time.perf_counter()
    return _finish(
        ctx,
        report,
        {"census_seconds": census_done - started, "total_seconds": finished - started},
    )


def _estimand(m: Model, text: str | None) -> EvidencePredicate:
    if text:
        return parse_evidence(text, m.num_vars)
    return m.evidence


def run_sample(
    ctx: AppContext, request: SampleRequest, *, estimand: str | None = None
) -> RunReport:
    settings = ctx.settings
    started = time.perf_counter()
    m = load_model(request.model_path)
    predicate = _estimand(m, estimand)
    cfg = ChainConfig(
        kind=request.kind,
        seed=request.seed,
        iterations=request.iterations,
        burn_in=request.burn_in,
        thinning=request.thinning,
        burnside_steps=request.burnside_steps or settings.burnside_steps,
        gibbs_updates_per_orbital_move=request.gibbs_updates or settings.lifted_gibbs_updates,
        pr_slots=settings.pr_slots,
        burnside_pr_burn_in=settings.burnside_pr_burn_in,
        orbital_pr_burn_in=settings.pr_burn_in,
        pr_steps_per_draw=settings.pr_steps_per_draw,
        debug_checks=settings.debug_checks,
    )
    symmetry = None
    if cfg.kind != ChainKind.GIBBS:
        symmetry = ModelSymmetry(m, prune=settings.automorphism_pruning)
    result = run_chain(m, cfg, predicate, symmetry=symmetry)
    if request.samples_path:
        write_samples_csv(result, request.samples_path)

    inputs = request.model_dump(mode="json", exclude={"seed"}) | {"estimand": estimand}
    report = _report(ctx, "sample", inputs, seed=request.seed)
    report.results = {
        "kind": cfg.kind.value,
        "estimate": result.estimate,
        "acceptance_rate": result.acceptance_rate,
        "samples": len(result.samples),
        "final_bits": assignment_to_bits(result.final_state.current),
    }
    return _finish(ctx, report, {"total_seconds": time.perf_counter() - started})


def run_tveval(ctx: AppContext, request: TVEvalRequest) -> RunReport:
    settings = ctx.settings
    started = time.perf_counter()
    m = load_model(request.model_path)
    if m.num_vars > settings.kernel_state_cap:
        raise StateSpaceTooLarge(m.num_vars, settings.kernel_state_cap)
    symmetry = ModelSymmetry(m, prune=settings.automorphism_pruning)
    kernel_ctx = KernelContext.build(
        m,
        symmetry=symmetry,
        state_cap=settings.kernel_state_cap,
        element_cap=settings.element_cap,
    )
    start = assignment_from_bits(request.start_bits) if request.start_bits else None
    table = tv_table(
        m,
        request.T,
        request.k or settings.burnside_steps,
        start,
        gibbs_updates=settings.lifted_gibbs_updates,
        ctx=kernel_ctx,
    )
    if request.out_path:
        write_tv_csv(table, request.out_path)
    last = table.rows[-1]
    report = _report(ctx, "tveval", request.model_dump(mode="json"))
    report.results = {
        **table.metadata,
        "final_tv_orbit_jump": last[1],
        "final_tv_lifted": last[2],
        "final_tv_gibbs": last[3],
    }
    return _finish(ctx, report, {"total_seconds": time.perf_counter() - started})


def bench_rows(ctx: AppContext, request: BenchRequest) -> list[dict[str, Any]]:
    """One row per size; brute-force columns stay empty above the cap."""
    settings = ctx.settings
    rows: list[dict[str, Any]] = []
    for size in request.sizes:
        m = generate_family(
            request.family,
            size,
            holes=request.holes,
            soft_w=request.soft_w,
            pair_table=request.pair_table,
            ev_table=request.ev_table,
        )
        started = time.perf_counter()
        census = generate_orbits(
            m,
            automorphism_pruning=settings.automorphism_pruning,
            debug_checks=settings.debug_checks,
        )
        log_z = partition_function(census)
        row: dict[str, Any] = {
            "size": size,
            "num_vars": m.num_vars,
            "wall_seconds": time.perf_counter() - started,
            "orbit_count": census.num_orbits,
            "certificate_calls": census.stats.certificate_calls,
            "log_z": repr(log_z),
            "brute_force_seconds": "",
            "brute_force_log_z": "",
        }
        if m.num_vars <= settings.brute_force_cap:
            bf_started = time.perf_counter()
            oracle = brute_force(m, cap=settings.brute_force_cap)
            row["brute_force_seconds"] = time.perf_counter() - bf_started
            row["brute_force_log_z"] = repr(oracle.log_z)
        ctx.logger.counter("bench_instance", size, orbits=census.num_orbits)
        rows.append(row)
    return rows


def write_bench_csv(rows: list[dict[str, Any]], path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="", encoding="utf-8") as handle:
        writer = csv.DictWriter(handle, fieldnames=BENCH_COLUMNS)
        writer.writeheader()
        writer.writerows(rows)
    return path


def run_bench(ctx: AppContext, request: BenchRequest) -> RunReport:
    started = time.perf_counter()
    rows = bench_rows(ctx, request)
    if request.out_path:
        write_bench_csv(rows, request.out_path)
    report = _report(ctx, "bench", request.model_dump(mode="json"))
    # wall times only belong in the CSV
    report.results = {
        "instances": [{key: row[key] for key in _REPORTED_BENCH_COLUMNS} for row in rows]
    }
    return _finish(ctx, report, {"total_seconds": time.perf_counter() - started})


__all__ = [
    "BENCH_COLUMNS",
    "bench_rows",
    "run_bench",
    "run_exact",
    "run_generate",
    "run_sample",
    "run_tveval",
    "write_bench_csv",
]
