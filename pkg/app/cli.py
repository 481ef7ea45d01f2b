"""lifted-orbits CLI entrypoint.

Subcommands map one-to-one onto the workflows in
``app.application.workflows``; every run prints (or writes) a JSON
RunReport. Exit codes: 0 ok, 2 bad input, 3 infeasible or invariant
failure, 4 resource cap.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Sequence

from dotenv import load_dotenv
from pydantic import ValidationError

from app.application.context import AppContext, derive_trace_id, make_app_context
from app.application.contracts import (
    BenchRequest,
    ExactRequest,
    RunReport,
    RunStatus,
    SampleRequest,
    TVEvalRequest,
)
from app.application.workflows import run_bench, run_exact, run_generate, run_sample, run_tveval
from app.domain.enums import ChainKind, ModelFamily
from app.domain.exceptions import DomainError

load_dotenv()

EXIT_OK = 0
EXIT_USAGE = 2


def _floats(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(part) for part in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"expected comma-separated numbers, got {text!r}"
        ) from None


def _sizes(text: str) -> list[int]:
    """``5``, ``2,4,8`` or an inclusive range ``2:20``."""
    try:
        if ":" in text:
            lo, hi = (int(part) for part in text.split(":", 1))
            return list(range(lo, hi + 1))
        return [int(part) for part in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected N, N,M,... or LO:HI, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lifted-orbits",
        description="Exact and sampling-based inference over orbits of model symmetries.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--report", help="write the JSON report here instead of stdout")
    common.add_argument("--timings", action="store_true", help="include wall-clock timings")
    common.add_argument("--threads", type=int, default=None)
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", parents=[common], help="write a benchmark model file")
    gen.add_argument("family", choices=[f.value for f in ModelFamily])
    gen.add_argument("size", type=int, help="pigeons, or variables for pairwise")
    gen.add_argument("out")
    gen.add_argument("--holes", type=int, default=2)
    gen.add_argument("--soft-w", type=float, default=2.0)
    gen.add_argument("--pair-table", type=_floats, default=(1.0, 0.0, 1.0))
    gen.add_argument("--ev-table", type=_floats, default=(0.0, 1.0))
    gen.add_argument("--evidence", help="evidence line body, e.g. 'card ge 1 1 2 3'")

    exact = sub.add_parser("exact", parents=[common], help="exact lifted inference")
    exact.add_argument("model")
    exact.add_argument("--census-out", help="orbit census JSONL path")
    exact.add_argument("--marginals", action="store_true")

    sample = sub.add_parser("sample", parents=[common], help="run a Markov chain")
    sample.add_argument("model")
    sample.add_argument("--seed", type=int, required=True)
    sample.add_argument("--kind", choices=[k.value for k in ChainKind], default="orbit_jump")
    sample.add_argument("--iterations", type=int, default=1000)
    sample.add_argument("--burn-in", type=int, default=0)
    sample.add_argument("--thinning", type=int, default=1)
    sample.add_argument("-k", "--burnside-steps", type=int, default=None)
    sample.add_argument("--gibbs-updates", type=int, default=None)
    sample.add_argument("--estimand", help="predicate to estimate; defaults to the model evidence")
    sample.add_argument("--out", help="sample CSV path")

    tveval = sub.add_parser("tveval", parents=[common], help="exact TV curves of all samplers")
    tveval.add_argument("model")
    tveval.add_argument("-T", type=int, default=200)
    tveval.add_argument("-k", type=int, default=None)
    tveval.add_argument("--start", help="start state as a bit string")
    tveval.add_argument("--out", help="TV CSV path")

    bench = sub.add_parser("bench", parents=[common], help="orbit generation scaling")
    bench.add_argument("family", choices=[f.value for f in ModelFamily])
    bench.add_argument("sizes", type=_sizes)
    bench.add_argument("--holes", type=int, default=2)
    bench.add_argument("--soft-w", type=float, default=2.0)
    bench.add_argument("--out", help="bench CSV path")
    return parser


def _dispatch(args: argparse.Namespace, ctx: AppContext) -> RunReport:
    if args.command == "generate":
        return run_generate(
            ctx,
            args.family,
            args.size,
            args.out,
            evidence=args.evidence,
            holes=args.holes,
            soft_w=args.soft_w,
            pair_table=args.pair_table,
            ev_table=args.ev_table,
        )
    if args.command == "exact":
        request = ExactRequest(
            model_path=args.model,
            census_path=args.census_out,
            marginals=args.marginals,
            threads=ctx.settings.threads,
        )
        return run_exact(ctx, request)
    if args.command == "sample":
        request = SampleRequest(
            model_path=args.model,
            seed=args.seed,
            kind=args.kind,
            iterations=args.iterations,
            burn_in=args.burn_in,
            thinning=args.thinning,
            burnside_steps=args.burnside_steps,
            gibbs_updates=args.gibbs_updates,
            samples_path=args.out,
        )
        return run_sample(ctx, request, estimand=args.estimand)
    if args.command == "tveval":
        request = TVEvalRequest(
            model_path=args.model, T=args.T, k=args.k, start_bits=args.start, out_path=args.out
        )
        return run_tveval(ctx, request)
    request = BenchRequest(
        family=args.family,
        sizes=args.sizes,
        holes=args.holes,
        soft_w=args.soft_w,
        out_path=args.out,
    )
    return run_bench(ctx, request)


def _emit(report: RunReport, path: str | None) -> None:
    text = report.model_dump_json(indent=2) + "\n"
    if path:
        target = Path(path)
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _fail(args: argparse.Namespace, trace_id: str, message: str, code: int) -> int:
    """Report a failed run on stderr and as an error RunReport."""
    print(f"error: {message}", file=sys.stderr)
    report = RunReport(
        command=args.command,
        status=RunStatus.ERROR,
        message=message,
        results={"exit_code": code},
        trace_id=trace_id,
    )
    try:
        _emit(report, args.report)
    except OSError:
        pass
    return code


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    trace_id = derive_trace_id(args.command, getattr(args, "seed", None))
    try:
        ctx = make_app_context(
            trace_id=trace_id,
            include_timings=args.timings,
            threads=args.threads,
        )
        report = _dispatch(args, ctx)
    except DomainError as exc:
        return _fail(args, trace_id, str(exc), exc.exit_code)
    except ValidationError as exc:
        return _fail(args, trace_id, f"invalid arguments: {exc}", EXIT_USAGE)
    except OSError as exc:
        return _fail(args, trace_id, str(exc), EXIT_USAGE)
    _emit(report, args.report)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
