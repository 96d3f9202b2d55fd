"""Command-line entry point: ``domp <command> [options]``."""

from __future__ import annotations

import argparse
import logging
import sys
from collections.abc import Sequence
from pathlib import Path
from typing import TextIO

from pydantic import ValidationError

from .client import DOMPSolver
from .config import DOMPConfig
from .errors import DOMPError, OracleLimitExceededError
from .models.bpc import BranchStrategy, SolveParams, SolveReport
from .models.grasp import GraspConfig
from .models.instance import Instance, WeightsKind
from .models.stabilization import StabConfig
from .services.instances import dumps
from .services.woc import gap_pct

logger = logging.getLogger(__name__)

COMPARE_HEADER = (
    "n p gaplp_mp gaplp_woc vars_mp vars_woc value lb gap_pct nodes cols cuts time_s"
)


def _common() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("--format", choices=["human", "tsv"], default="human")
    parent.add_argument("--threads", type=int, default=None, help="pricing threads")
    parent.add_argument("--log", default=None, help="write log records to PATH")
    parent.add_argument(
        "--log-level",
        default=None,
        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
    )
    return parent


def _solver_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--time-limit", type=float, default=None)
    parser.add_argument("--no-grasp", action="store_true")
    stab = parser.add_mutually_exclusive_group()
    stab.add_argument("--no-stab", action="store_true")
    stab.add_argument("--stab-delta", type=float, default=None)
    parser.add_argument(
        "--branch-strategy", type=int, choices=[1, 2, 3], default=1
    )
    parser.add_argument("--theta", type=float, default=0.5)
    parser.add_argument("--no-cuts", action="store_true")
    parser.add_argument("--fix-file", default=None)
    parser.add_argument("--seed", type=int, default=None)


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(
        prog="domp",
        description="Discrete ordered median problem: generators, heuristics and exact solver.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", parents=[common], help="write a random instance")
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--p", type=int, required=True)
    gen.add_argument("--seed", type=int, default=None)
    gen.add_argument(
        "--weights",
        choices=[kind.value for kind in WeightsKind],
        default=WeightsKind.RANDOM.value,
    )
    gen.add_argument("--out", default=None, help="instance file (stdout when omitted)")

    oracle = sub.add_parser("oracle", parents=[common], help="brute-force optimum")
    oracle.add_argument("--instance", required=True)
    oracle.add_argument("--limit", type=int, default=None)

    grasp = sub.add_parser("grasp", parents=[common], help="GRASP heuristic")
    grasp.add_argument("--instance", required=True)
    grasp.add_argument("--replications", type=int, default=20)
    grasp.add_argument("--iterations", type=int, default=10)
    grasp.add_argument("--partial", type=int, default=None)
    grasp.add_argument("--seed", type=int, default=None)

    relax = sub.add_parser("relax", parents=[common], help="LP relaxation values")
    relax.add_argument("--instance", required=True)
    relax.add_argument("--formulation", choices=["mp", "woc"], required=True)
    relax.add_argument("--strong", action="store_true")
    relax.add_argument("--export", default=None, help="write the WOC LP text to PATH")

    solve = sub.add_parser("solve", parents=[common], help="branch-price-and-cut")
    solve.add_argument("--instance", required=True)
    _solver_options(solve)

    compare = sub.add_parser("compare", parents=[common], help="benchmark a directory")
    compare.add_argument("--dir", required=True)
    compare.add_argument("--out", default=None, help="TSV file (stdout when omitted)")
    compare.add_argument("--strong", action="store_true")
    _solver_options(compare)
    return parser


def _configure_logging(args: argparse.Namespace, cfg: DOMPConfig) -> None:
    level = args.log_level or cfg.log_level
    logging.basicConfig(
        filename=args.log,
        level=getattr(logging, str(level).upper(), logging.WARNING),
        format="%(asctime)s %(name)s %(levelname)s %(message)s",
    )


def _solve_params(solver: DOMPSolver, args: argparse.Namespace) -> SolveParams:
    cfg = solver.config
    stab = StabConfig()
    if args.no_stab:
        stab = StabConfig(enabled=False)
    elif args.stab_delta is not None:
        stab = StabConfig(delta_init=args.stab_delta)
    fixings = solver.bpc.load_fixings(args.fix_file) if args.fix_file else []
    return SolveParams.from_config(
        cfg,
        time_limit=cfg.time_limit if args.time_limit is None else args.time_limit,
        use_grasp=not args.no_grasp,
        grasp=GraspConfig(seed=cfg.seed if args.seed is None else args.seed),
        stab=stab,
        use_cuts=not args.no_cuts,
        branch_strategy=BranchStrategy(args.branch_strategy),
        theta=args.theta,
        fixings=fixings,
    )


def _emit_solve(report: SolveReport, fmt: str, out: TextIO) -> None:
    if fmt == "human":
        opened = " ".join(map(str, report.best_set.open)) if report.best_set else "-"
        print(f"status: {report.status.value}", file=out)
        print(f"value: {report.best_value}  open: {opened}", file=out)
        print(f"lower bound: {report.lower_bound:.6f}  gap: {report.gap_pct:.4f}%", file=out)
        print(
            f"nodes: {report.nodes}  columns: {report.columns}  cuts: {report.cuts}  "
            f"time: {report.time_s:.3f}s",
            file=out,
        )
    print(report.summary_line(), file=out)


def _cmd_generate(solver: DOMPSolver, args: argparse.Namespace, out: TextIO) -> int:
    inst = solver.instances.generate(args.n, args.p, args.seed, args.weights)
    if args.out:
        solver.instances.save(inst, args.out)
    else:
        out.write(dumps(inst))
    return 0


def _cmd_oracle(solver: DOMPSolver, args: argparse.Namespace, out: TextIO) -> int:
    inst = solver.instances.load(args.instance)
    result = solver.oracle.solve_exhaustive(inst, args.limit)
    sets = ";".join(" ".join(map(str, s.open)) for s in result.best_sets)
    if args.format == "tsv":
        print(f"{inst.n}\t{inst.p}\t{result.best_value}\t{sets}", file=out)
    else:
        print(f"optimum: {result.best_value}", file=out)
        print(f"optimal sets: {sets}", file=out)
        print(f"subsets evaluated: {result.subsets_evaluated}", file=out)
    return 0


def _cmd_grasp(solver: DOMPSolver, args: argparse.Namespace, out: TextIO) -> int:
    inst = solver.instances.load(args.instance)
    cfg = GraspConfig(
        replications=args.replications,
        local_search_iterations=args.iterations,
        partial_size=args.partial,
        seed=solver.config.seed if args.seed is None else args.seed,
    )
    result = solver.grasp.run(inst, cfg)
    opened = " ".join(map(str, result.best_set.open))
    if args.format == "tsv":
        print(
            f"{inst.n}\t{inst.p}\t{result.best_value}\t{len(result.harvested_columns)}",
            file=out,
        )
    else:
        print(f"value: {result.best_value}  open: {opened}", file=out)
        print(f"harvested columns: {len(result.harvested_columns)}", file=out)
    return 0


def _reference_value(solver: DOMPSolver, inst: Instance) -> int | None:
    try:
        return solver.oracle.solve_exhaustive(inst).best_value
    except OracleLimitExceededError:
        return None


def _cmd_relax(solver: DOMPSolver, args: argparse.Namespace, out: TextIO) -> int:
    inst = solver.instances.load(args.instance)
    if args.formulation == "woc":
        model = solver.relaxations.build_woc(inst, args.strong)
        value = model.solve()
        variables = model.num_variables
        if args.export:
            solver.relaxations.export_woc(model, args.export)
    else:
        rm = solver.relaxations.master_root(inst, args.strong)
        value = rm.objective
        variables = len(rm.columns)
    reference = _reference_value(solver, inst)
    gap = "NA" if reference is None else f"{gap_pct(reference, value):.4f}"
    if args.format == "tsv":
        print(f"{args.formulation}\t{value:.6f}\t{variables}\t{gap}", file=out)
    else:
        print(f"{args.formulation} LP value: {value:.6f}", file=out)
        print(f"variables: {variables}", file=out)
        print(f"gap vs oracle: {gap}", file=out)
    return 0


def _cmd_solve(solver: DOMPSolver, args: argparse.Namespace, out: TextIO) -> int:
    inst = solver.instances.load(args.instance)
    report = solver.bpc.solve(inst, _solve_params(solver, args))
    _emit_solve(report, args.format, out)
    return 0


def _cmd_compare(solver: DOMPSolver, args: argparse.Namespace, out: TextIO) -> int:
    paths = sorted(Path(args.dir).glob("*.domp"))
    rows = ["\t".join(COMPARE_HEADER.split())]
    for path in paths:
        inst = solver.instances.load(path)
        report = solver.bpc.solve(inst, _solve_params(solver, args))
        reference = _reference_value(solver, inst)
        if reference is None:
            reference = report.best_value
        gaps = solver.relaxations.gap_report(
            inst, float(reference or 0), strong=args.strong
        )
        rows.append(
            "\t".join(
                [
                    str(inst.n),
                    str(inst.p),
                    f"{gaps.gap_mp_pct:.4f}",
                    f"{gaps.gap_woc_pct:.4f}",
                    str(gaps.vars_mp),
                    str(gaps.vars_woc),
                    "NA" if report.best_value is None else str(report.best_value),
                    f"{report.lower_bound:.6f}",
                    f"{report.gap_pct:.4f}",
                    str(report.nodes),
                    str(report.columns),
                    str(report.cuts),
                    f"{report.time_s:.3f}",
                ]
            )
        )
        logger.info("compared %s", path.name)
    text = "\n".join(rows) + "\n"
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        out.write(text)
    return 0


_COMMANDS = {
    "generate": _cmd_generate,
    "oracle": _cmd_oracle,
    "grasp": _cmd_grasp,
    "relax": _cmd_relax,
    "solve": _cmd_solve,
    "compare": _cmd_compare,
}


def main(argv: Sequence[str] | None = None, out: TextIO | None = None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    cfg = DOMPConfig.from_env()
    if args.threads is not None:
        cfg = cfg.model_copy(update={"threads": args.threads})
    _configure_logging(args, cfg)
    solver = DOMPSolver(cfg)
    try:
        return _COMMANDS[args.command](solver, args, out)
    except (OSError, ValidationError) as exc:
        print(f"domp: {exc}", file=sys.stderr)
        return 2
    except DOMPError as exc:
        print(f"domp: {exc}", file=sys.stderr)
        return 1
