"""Benchmark driver and reporting: run instance x formulation x estimator
sweeps, compute optimality-gap / hit-probability / evaluation-count
statistics, and emit CSV or JSON reports.

CSV schema (one row per trial)::

    instance,formulation,estimator,alpha,qubits,trial,feasible,gap,p_star,nfev,final_estimate,seed

The gap column is empty for infeasible trials.  Header comment lines
(prefixed ``#``) embed the full run configuration for provenance, so
re-running with the same config reproduces the file byte for byte.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from typing import Sequence

import numpy as np

from .estimators import EstimatorConfig, EstimatorKind
from .formulation import LossSpec, LossVariant, compile_spec
from .instances import MdkpInstance, true_optimum
from .simulator import QUBIT_CAP
from .vqe import TrialResult, VqeConfig, run_trials


class HarnessError(ValueError):
    pass


def optimality_gap(c_vqe: int, c_true: int) -> float:
    """1 - c_vqe / c_true: 0 at the exact optimum, 1 for the empty solution."""
    if c_true <= 0:
        raise HarnessError(f"need a positive ground truth, got {c_true}")
    if c_vqe > c_true:
        raise HarnessError(
            f"feasible objective {c_vqe} exceeds the oracle optimum {c_true}; "
            "the ground truth is wrong"
        )
    if c_vqe < 0:
        raise HarnessError(f"feasible objective must be nonnegative, got {c_vqe}")
    return 1.0 - c_vqe / c_true


@dataclass(frozen=True)
class Stats:
    mean: float
    median: float
    min: float
    max: float
    iqr: float


def summary_stats(values: Sequence[float]) -> Stats | None:
    """Boxplot-style summary; medians/quartiles use linear interpolation."""
    if len(values) == 0:
        return None
    arr = np.asarray(values, dtype=np.float64)
    q1, q3 = np.percentile(arr, [25.0, 75.0])
    return Stats(
        mean=float(arr.mean()),
        median=float(np.median(arr)),
        min=float(arr.min()),
        max=float(arr.max()),
        iqr=float(q3 - q1),
    )


@dataclass(frozen=True)
class TrialRow:
    trial: int
    feasible: bool
    gap: float | None
    p_star: float
    nfev: int
    final_estimate: float


@dataclass(frozen=True)
class RunReport:
    instance: str
    formulation: str
    estimator: str
    alpha: float
    qubits: int
    seed: int
    c_true: int
    per_trial: tuple[TrialRow, ...]
    gap_stats: Stats | None
    p_star_stats: Stats | None
    nfev_stats: Stats | None
    infeasible_trials: int


def summarize_run(
    spec: LossSpec,
    results: Sequence[TrialResult],
    estimator: EstimatorConfig,
    seed: int,
    c_true: int,
) -> RunReport:
    rows = []
    for res in results:
        gap = optimality_gap(res.objective_value, c_true) if res.feasible else None
        rows.append(
            TrialRow(
                trial=res.trial_index,
                feasible=res.feasible,
                gap=gap,
                p_star=res.quasi_opt_probability,
                nfev=res.nfev,
                final_estimate=res.final_estimate,
            )
        )
    gaps = [r.gap for r in rows if r.gap is not None]
    return RunReport(
        instance=spec.instance.name,
        formulation=spec.variant.value,
        estimator=estimator.kind.value,
        alpha=estimator.effective_alpha,
        qubits=spec.total_qubits,
        seed=seed,
        c_true=c_true,
        per_trial=tuple(rows),
        gap_stats=summary_stats(gaps),
        p_star_stats=summary_stats([r.p_star for r in rows]),
        nfev_stats=summary_stats([r.nfev for r in rows]),
        infeasible_trials=sum(1 for r in rows if not r.feasible),
    )


@dataclass(frozen=True)
class SkippedRun:
    instance: str
    formulation: str
    qubits: int
    skipped_reason: str


def run_benchmark_cell(
    inst: MdkpInstance,
    variant: LossVariant | str,
    estimator: EstimatorConfig,
    vqe_config: VqeConfig,
    cap: int = QUBIT_CAP,
    workers: int = 1,
) -> RunReport:
    spec = compile_spec(inst, variant)
    config = VqeConfig(
        estimator=estimator,
        trials=vqe_config.trials,
        maxfev=vqe_config.maxfev,
        xtol=vqe_config.xtol,
        shots=vqe_config.shots,
        seed=vqe_config.seed,
    )
    results = run_trials(spec, config, cap=cap, workers=workers)
    return summarize_run(spec, results, estimator, config.seed, true_optimum(inst))


def bench(
    instances: Sequence[MdkpInstance],
    formulations: Sequence[LossVariant | str],
    estimators: Sequence[EstimatorConfig],
    vqe_config: VqeConfig,
    cap: int = QUBIT_CAP,
    workers: int = 1,
) -> tuple[list[RunReport], list[SkippedRun]]:
    """Full cross product of instances x formulations x estimators.

    Combinations over the statevector cap are skipped with a recorded
    reason, never silently substituted.
    """
    reports: list[RunReport] = []
    skipped: list[SkippedRun] = []
    for inst in instances:
        for variant in formulations:
            spec = compile_spec(inst, variant)
            if spec.total_qubits > cap:
                skipped.append(
                    SkippedRun(
                        instance=inst.name,
                        formulation=LossVariant(variant).value,
                        qubits=spec.total_qubits,
                        skipped_reason="qubit_cap",
                    )
                )
                continue
            for estimator in estimators:
                reports.append(
                    run_benchmark_cell(
                        inst, variant, estimator, vqe_config, cap=cap, workers=workers
                    )
                )
    return reports, skipped


# ---------------------------------------------------------------------------
# serialization


def _config_header(vqe_config: VqeConfig, skipped: Sequence[SkippedRun]) -> list[str]:
    cfg = {
        "trials": vqe_config.trials,
        "maxfev": vqe_config.maxfev,
        "xtol": vqe_config.xtol,
        "shots": vqe_config.shots,
        "seed": vqe_config.seed,
    }
    lines = [f"# config: {json.dumps(cfg, sort_keys=True)}"]
    for skip in skipped:
        lines.append(
            f"# skipped: {skip.instance},{skip.formulation},{skip.qubits},"
            f"{skip.skipped_reason}"
        )
    return lines


def reports_to_csv(
    reports: Sequence[RunReport],
    vqe_config: VqeConfig,
    skipped: Sequence[SkippedRun] = (),
) -> str:
    lines = _config_header(vqe_config, skipped)
    lines.append(
        "instance,formulation,estimator,alpha,qubits,trial,feasible,gap,"
        "p_star,nfev,final_estimate,seed"
    )
    for rep in reports:
        for row in rep.per_trial:
            gap = repr(row.gap) if row.gap is not None else ""
            lines.append(
                f"{rep.instance},{rep.formulation},{rep.estimator},{rep.alpha!r},"
                f"{rep.qubits},{row.trial},{int(row.feasible)},{gap},"
                f"{row.p_star!r},{row.nfev},{row.final_estimate!r},{rep.seed}"
            )
    return "\n".join(lines) + "\n"


def reports_to_json(
    reports: Sequence[RunReport],
    vqe_config: VqeConfig,
    skipped: Sequence[SkippedRun] = (),
) -> str:
    payload = {
        "config": {
            "trials": vqe_config.trials,
            "maxfev": vqe_config.maxfev,
            "xtol": vqe_config.xtol,
            "shots": vqe_config.shots,
            "seed": vqe_config.seed,
        },
        "skipped": [asdict(s) for s in skipped],
        "reports": [asdict(r) for r in reports],
    }
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def csv_trial_rows(text: str) -> list[dict[str, str]]:
    """Parse a report CSV back into dict rows (comment lines skipped)."""
    import csv as _csv
    import io

    lines = [ln for ln in text.splitlines() if not ln.startswith("#")]
    return list(_csv.DictReader(io.StringIO("\n".join(lines))))
