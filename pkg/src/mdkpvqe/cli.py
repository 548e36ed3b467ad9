"""Command-line interface.

Subcommands:

* ``solve <file>`` - run VQE trials on one instance file.
* ``exact <file>`` - print the exact optimum and maximizing assignment.
* ``qubits <files...>`` - qubit counts for both formulations, CSV.
* ``shots --epsilon E --delta D --range R [--alpha A]`` - shot budgets.
* ``bench --config <toml-or-json>`` - full benchmark sweep.

Exit status: 0 on success, 1 on usage errors, 2 on runtime errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .estimators import EstimatorConfig, EstimatorKind, shots_required
from .formulation import qubit_report, qubit_report_csv
from .harness import bench, reports_to_csv, reports_to_json, run_benchmark_cell
from .instances import exact_optimum, parse_instance_file
from .vqe import VqeConfig


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # exit 1 on usage errors, not argparse's 2
        raise _UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="mdkpvqe")
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="run VQE on one instance file")
    solve.add_argument("file")
    solve.add_argument("--formulation", choices=["custom", "slack"], default="custom")
    solve.add_argument("--estimator", choices=["fs", "cvar"], default="cvar")
    solve.add_argument("--alpha", type=float, default=0.1)
    solve.add_argument("--shots", type=int, default=4000)
    solve.add_argument("--trials", type=int, default=20)
    solve.add_argument("--seed", type=int, default=0)
    solve.add_argument("--maxfev", type=int, default=10000)
    solve.add_argument("--xtol", type=float, default=1e-4)
    solve.add_argument("--workers", type=int, default=1)
    solve.add_argument("--out", default=None)
    solve.add_argument("--format", choices=["csv", "json"], default="csv")

    exact = sub.add_parser("exact", help="exact optimum of one instance file")
    exact.add_argument("file")

    qubits = sub.add_parser("qubits", help="qubit counts for both formulations")
    qubits.add_argument("files", nargs="+")

    shots = sub.add_parser("shots", help="shot budgets from the Hoeffding bound")
    shots.add_argument("--epsilon", type=float, required=True)
    shots.add_argument("--delta", type=float, required=True)
    shots.add_argument("--range", type=int, required=True, dest="loss_range")
    shots.add_argument("--alpha", type=float, default=1.0)

    bench_p = sub.add_parser("bench", help="benchmark sweep from a config file")
    bench_p.add_argument("--config", required=True)
    bench_p.add_argument("--out", default=None)
    bench_p.add_argument("--format", choices=["csv", "json"], default=None)
    return parser


def _estimator_config(kind: str, alpha: float, shots: int) -> EstimatorConfig:
    return EstimatorConfig(
        kind=EstimatorKind(kind),
        alpha=alpha if kind == "cvar" else 1.0,
        shots=shots,
    )


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _cmd_solve(args: argparse.Namespace) -> int:
    inst = parse_instance_file(args.file)
    estimator = _estimator_config(args.estimator, args.alpha, args.shots)
    config = VqeConfig(
        estimator=estimator,
        trials=args.trials,
        maxfev=args.maxfev,
        xtol=args.xtol,
        shots=args.shots,
        seed=args.seed,
    )
    report = run_benchmark_cell(
        inst, args.formulation, estimator, config, workers=args.workers
    )
    if args.format == "json":
        _emit(reports_to_json([report], config), args.out)
    else:
        _emit(reports_to_csv([report], config), args.out)
    gap = report.gap_stats
    if gap is not None:
        sys.stderr.write(
            f"{inst.name}: best gap {gap.min:.4f}, median gap {gap.median:.4f}, "
            f"{report.infeasible_trials} infeasible trial(s)\n"
        )
    else:
        sys.stderr.write(f"{inst.name}: no feasible trials\n")
    return 0


def _cmd_exact(args: argparse.Namespace) -> int:
    inst = parse_instance_file(args.file)
    assignment, objective = exact_optimum(inst)
    sys.stdout.write(f"optimum {objective}\n")
    sys.stdout.write(f"assignment {assignment.as_string()}\n")
    return 0


def _cmd_qubits(args: argparse.Namespace) -> int:
    instances = [parse_instance_file(path) for path in args.files]
    sys.stdout.write(qubit_report_csv(qubit_report(instances)))
    return 0


def _cmd_shots(args: argparse.Namespace) -> int:
    budget = shots_required(args.epsilon, args.delta, args.loss_range, args.alpha)
    sys.stdout.write(f"M_fs={budget.m_fs} M_alpha={budget.m_alpha}\n")
    return 0


def _load_bench_config(path: str) -> dict:
    with open(path, "rb") as fh:
        raw = fh.read()
    if path.endswith(".toml"):
        try:
            import tomllib
        except ImportError:  # python < 3.11
            import tomli as tomllib

        return tomllib.loads(raw.decode("utf-8"))
    return json.loads(raw.decode("utf-8"))


def _cmd_bench(args: argparse.Namespace) -> int:
    cfg = _load_bench_config(args.config)
    instances = [parse_instance_file(path) for path in cfg["instances"]]
    formulations = cfg.get("formulations", ["custom"])
    shots = int(cfg.get("shots", 4000))
    alpha = float(cfg.get("alpha", 0.1))
    estimators = [
        _estimator_config(kind, alpha, shots)
        for kind in cfg.get("estimators", ["fs", "cvar"])
    ]
    vqe_config = VqeConfig(
        estimator=estimators[0],
        trials=int(cfg.get("trials", 20)),
        maxfev=int(cfg.get("maxfev", 10000)),
        xtol=float(cfg.get("xtol", 1e-4)),
        shots=shots,
        seed=int(cfg.get("seed", 0)),
    )
    reports, skipped = bench(
        instances,
        formulations,
        estimators,
        vqe_config,
        workers=int(cfg.get("workers", 1)),
    )
    fmt = args.format or cfg.get("format", "csv")
    out = args.out or cfg.get("out")
    if fmt == "json":
        _emit(reports_to_json(reports, vqe_config, skipped), out)
    else:
        _emit(reports_to_csv(reports, vqe_config, skipped), out)
    return 0


_COMMANDS = {
    "solve": _cmd_solve,
    "exact": _cmd_exact,
    "qubits": _cmd_qubits,
    "shots": _cmd_shots,
    "bench": _cmd_bench,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        return 1
    try:
        return _COMMANDS[args.command](args)
    except FileNotFoundError as exc:
        sys.stderr.write(f"error: no such file: {exc.filename}\n")
        return 2
    except (ValueError, KeyError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
