"""The variational loop: a Powell conjugate-direction search over the 2n
ansatz angles, minimizing a stochastic shot-based estimator, with
multi-trial random initialization.

Every trial owns an independent RNG stream derived from the master seed,
so results are a pure function of (instance, config); trials can run in
parallel without changing output bytes.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.optimize import minimize

from .estimators import EstimatorConfig, EstimatorKind, cvar_tail_mean, quasi_optimum
from .formulation import LossSpec, evaluate, evaluate_all
from .instances import Assignment, is_feasible, objective_value
from .simulator import (
    QUBIT_CAP,
    QubitCapError,
    SampleSet,
    prepare_state,
    sample,
    sample_indices,
)

LOSS_TABLE_QUBIT_CAP = 22


@dataclass(frozen=True)
class VqeConfig:
    estimator: EstimatorConfig
    trials: int = 20
    maxfev: int = 10000
    xtol: float = 1e-4
    shots: int = 4000
    seed: int = 0

    def __post_init__(self) -> None:
        if self.trials < 1:
            raise ValueError(f"trials must be >= 1, got {self.trials}")
        if self.maxfev < 1:
            raise ValueError(f"maxfev must be >= 1, got {self.maxfev}")
        if self.xtol <= 0:
            raise ValueError(f"xtol must be > 0, got {self.xtol}")


@dataclass(frozen=True)
class TrialResult:
    trial_index: int
    theta_star: np.ndarray
    final_estimate: float
    nfev: int
    final_samples: SampleSet
    quasi_opt: Assignment
    quasi_opt_probability: float
    feasible: bool
    objective_value: int


class _BudgetExhausted(Exception):
    pass


def powell_minimize(
    f: Callable[[np.ndarray], float],
    theta0: np.ndarray,
    maxfev: int,
    xtol: float,
) -> tuple[np.ndarray, int]:
    """Powell's conjugate-direction search, returning the best point seen.

    Tracking the best evaluated (theta, value) pair guards against
    noise-induced regressions when ``f`` is stochastic.  Stops when the
    per-iteration parameter change falls under ``xtol`` or the evaluation
    budget is spent; nfev counts every call to ``f`` exactly once.
    """
    theta0 = np.asarray(theta0, dtype=np.float64)
    best_theta = theta0.copy()
    best_value = math.inf
    nfev = 0

    def wrapped(x: np.ndarray) -> float:
        nonlocal nfev, best_theta, best_value
        if nfev >= maxfev:
            raise _BudgetExhausted
        value = float(f(x))
        nfev += 1
        if value < best_value:
            best_value = value
            best_theta = np.array(x, dtype=np.float64, copy=True)
        return value

    try:
        minimize(
            wrapped,
            theta0,
            method="Powell",
            options={
                "xtol": xtol,
                "maxfev": maxfev + 1,  # budget enforced by the wrapper
                "maxiter": maxfev,
                "disp": False,
            },
        )
    except _BudgetExhausted:
        pass
    return best_theta, nfev


def make_objective(
    spec: LossSpec,
    shots: int,
    alpha: float,
    rng: np.random.Generator,
    loss_table: np.ndarray | None = None,
    cap: int = QUBIT_CAP,
) -> Callable[[np.ndarray], float]:
    """Stochastic objective: prepare the ansatz state, draw fresh shots,
    return the FS/CVaR estimate of the sampled losses.

    A precomputed per-basis-state loss table makes the per-call cost
    O(2^n + shots); without it the sampled bitstrings are evaluated
    individually.
    """
    nq = spec.total_qubits
    tail = math.ceil(alpha * shots)

    def objective(theta: np.ndarray) -> float:
        state = prepare_state(nq, theta, cap=cap)
        idx = sample_indices(state, shots, rng)
        if loss_table is not None:
            losses = loss_table[idx]
        else:
            uniq, inv = np.unique(idx, return_inverse=True)
            uniq_losses = np.array(
                [evaluate(spec, format(int(i), f"0{nq}b")).value for i in uniq],
                dtype=np.int64,
            )
            losses = uniq_losses[inv]
        if tail >= shots:
            return int(losses.sum()) / shots
        part = np.partition(losses, tail - 1)[:tail]
        return int(part.sum()) / tail

    return objective


def _trial_rngs(seed: int, trials: int) -> list[np.random.Generator]:
    return [np.random.default_rng(s) for s in np.random.SeedSequence(seed).spawn(trials)]


def _loss_table_for(spec: LossSpec) -> np.ndarray | None:
    if spec.total_qubits <= LOSS_TABLE_QUBIT_CAP:
        return evaluate_all(spec, qubit_cap=LOSS_TABLE_QUBIT_CAP)
    return None


def _run_single_trial(
    spec: LossSpec,
    config: VqeConfig,
    trial_index: int,
    rng: np.random.Generator,
    loss_table: np.ndarray | None,
    cap: int,
) -> TrialResult:
    nq = spec.total_qubits
    theta0 = rng.uniform(0.0, 2.0 * np.pi, size=2 * nq)
    objective = make_objective(
        spec, config.shots, config.estimator.effective_alpha, rng, loss_table, cap
    )
    theta_star, nfev = powell_minimize(objective, theta0, config.maxfev, config.xtol)

    final_state = prepare_state(nq, theta_star, cap=cap)
    final_samples = sample(final_state, config.shots, rng)
    losses = np.array(
        [
            loss_table[int(key, 2)]
            if loss_table is not None
            else evaluate(spec, key).value
            for key in final_samples.counts
        ],
        dtype=np.int64,
    )
    counts = np.array(list(final_samples.counts.values()), dtype=np.int64)
    final_estimate = cvar_tail_mean(
        losses, counts, config.estimator.effective_alpha
    )

    x_star = quasi_optimum(final_samples, spec, config.estimator.kind)
    # probability of the full quasi-optimal bitstring within the final samples
    if config.estimator.kind is EstimatorKind.FS:
        full_key = min(
            final_samples.counts,
            key=lambda k: (-final_samples.counts[k], evaluate(spec, k).value, k),
        )
    else:
        full_key = min(
            final_samples.counts, key=lambda k: (evaluate(spec, k).value, k)
        )
    p_star = final_samples.counts[full_key] / final_samples.total_shots

    feasible = is_feasible(spec.instance, x_star)
    c_vqe = objective_value(spec.instance, x_star) if feasible else 0
    return TrialResult(
        trial_index=trial_index,
        theta_star=theta_star,
        final_estimate=final_estimate,
        nfev=nfev,
        final_samples=final_samples,
        quasi_opt=x_star,
        quasi_opt_probability=p_star,
        feasible=feasible,
        objective_value=c_vqe,
    )


def run_trials(
    spec: LossSpec,
    config: VqeConfig,
    cap: int = QUBIT_CAP,
    workers: int = 1,
) -> list[TrialResult]:
    """Run ``config.trials`` independent VQE trials on ``spec``.

    Results are returned in trial order and are byte-identical for a given
    (spec, config) regardless of ``workers``.
    """
    if spec.total_qubits > cap:
        raise QubitCapError(
            f"{spec.instance.name}/{spec.variant.value}: {spec.total_qubits} qubits "
            f"exceeds the statevector cap of {cap}"
        )
    loss_table = _loss_table_for(spec)
    rngs = _trial_rngs(config.seed, config.trials)
    if workers <= 1:
        return [
            _run_single_trial(spec, config, t, rngs[t], loss_table, cap)
            for t in range(config.trials)
        ]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [
            pool.submit(_run_single_trial, spec, config, t, rngs[t], loss_table, cap)
            for t in range(config.trials)
        ]
        return [fut.result() for fut in futures]
