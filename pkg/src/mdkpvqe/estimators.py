"""Scalar objectives from sampled bitstrings: finite-sampling mean and the
CVaR tail mean, plus shot-budget calculators from the Hoeffding bound.

All loss accumulation stays in exact integer arithmetic; the one division
to a float happens last, so estimates are bit-reproducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

import numpy as np

from .formulation import LossSpec, evaluate
from .instances import Assignment
from .simulator import SampleSet


class EstimatorError(ValueError):
    pass


class EstimatorKind(Enum):
    FS = "fs"
    CVAR = "cvar"


@dataclass(frozen=True)
class EstimatorConfig:
    kind: EstimatorKind
    alpha: float = 1.0
    shots: int = 4000

    def __post_init__(self) -> None:
        if not 0.0 < self.alpha <= 1.0:
            raise EstimatorError(f"alpha must be in (0, 1], got {self.alpha}")
        if self.shots < 1:
            raise EstimatorError(f"shots must be >= 1, got {self.shots}")

    @property
    def effective_alpha(self) -> float:
        """FS is CVaR at alpha = 1."""
        return 1.0 if self.kind is EstimatorKind.FS else self.alpha


@dataclass(frozen=True)
class ShotBudget:
    epsilon: float
    delta: float
    loss_range: int
    alpha: float
    m_fs: int
    m_alpha: int


def cvar_tail_mean(
    losses: Sequence[int] | np.ndarray,
    weights: Sequence[int] | Sequence[float] | np.ndarray,
    alpha: float,
) -> float:
    """Mean of the lowest-loss tail of a weighted loss multiset.

    Integer weights are sample counts: the tail holds the ``ceil(alpha *
    M)`` lowest values of the expanded multiset, a boundary count group
    contributing partially.  Float weights are probabilities and the tail
    mass is ``alpha * total`` (used for exact-distribution expectations).
    """
    losses = np.asarray(losses)
    weights = np.asarray(weights)
    if losses.shape != weights.shape or losses.size == 0:
        raise EstimatorError("losses and weights must be equal-length, nonempty")
    if not 0.0 < alpha <= 1.0:
        raise EstimatorError(f"alpha must be in (0, 1], got {alpha}")
    order = np.argsort(losses, kind="stable")
    losses = losses[order]
    weights = weights[order]
    integer_weights = np.issubdtype(weights.dtype, np.integer)
    total = weights.sum()
    if integer_weights:
        tail = math.ceil(alpha * int(total))
        acc = 0  # exact integer partial sum
        remaining = tail
        for loss, w in zip(losses.tolist(), weights.tolist()):
            take = min(w, remaining)
            acc += loss * take
            remaining -= take
            if remaining == 0:
                break
        return acc / tail
    tail_mass = alpha * float(total)
    terms = []
    remaining_f = tail_mass
    for loss, w in zip(losses.tolist(), weights.tolist()):
        take = min(float(w), remaining_f)
        terms.append(float(loss) * take)
        remaining_f -= take
        if remaining_f <= 0.0:
            break
    return math.fsum(terms) / tail_mass


def _sample_losses(samples: SampleSet, spec: LossSpec) -> tuple[np.ndarray, np.ndarray]:
    if samples.total_shots < 1 or not samples.counts:
        raise EstimatorError("empty sample set")
    keys = list(samples.counts)
    for key in keys:
        if len(key) != spec.total_qubits:
            raise EstimatorError(
                f"sampled bit-length {len(key)} != spec qubits {spec.total_qubits}"
            )
    losses = np.array([evaluate(spec, key).value for key in keys], dtype=np.int64)
    counts = np.array([samples.counts[key] for key in keys], dtype=np.int64)
    return losses, counts


def estimate(samples: SampleSet, spec: LossSpec, config: EstimatorConfig) -> float:
    """FS mean or CVaR tail mean of the sampled losses."""
    losses, counts = _sample_losses(samples, spec)
    return cvar_tail_mean(losses, counts, config.effective_alpha)


def expected_loss(spec: LossSpec, probabilities: np.ndarray) -> float:
    """Exact-distribution expectation, through the same weighted machinery
    as :func:`estimate` (probabilities in index order, one per basis state).
    """
    probabilities = np.asarray(probabilities, dtype=np.float64)
    from .formulation import evaluate_all

    losses = evaluate_all(spec)
    if probabilities.shape != losses.shape:
        raise EstimatorError("need one probability per basis state")
    return cvar_tail_mean(losses, probabilities, 1.0)


def quasi_optimum(
    samples: SampleSet, spec: LossSpec, kind: EstimatorKind
) -> Assignment:
    """Extract the solution from a final sample set.

    FS: the modal bitstring.  CVaR: the lowest-loss sampled bitstring.
    Ties break toward the lower loss, then the lexicographically smaller
    string.  Only the first n bits (the decision variables) are returned.
    """
    losses, counts = _sample_losses(samples, spec)
    keys = list(samples.counts)
    if kind is EstimatorKind.FS:
        best = min(
            range(len(keys)),
            key=lambda i: (-counts[i], losses[i], keys[i]),
        )
    else:
        best = min(range(len(keys)), key=lambda i: (losses[i], keys[i]))
    bits = keys[best][: spec.instance.n]
    return Assignment(tuple(int(c) for c in bits))


def shots_required(
    epsilon: float, delta: float, loss_range: int, alpha: float = 1.0
) -> ShotBudget:
    """Shots needed for sampling error <= epsilon with confidence 1 - delta,
    from the Hoeffding bound on a loss with range ``loss_range``; the CVaR
    budget scales the FS budget by alpha.
    """
    if epsilon <= 0:
        raise EstimatorError(f"epsilon must be > 0, got {epsilon}")
    if not 0.0 < delta < 1.0:
        raise EstimatorError(f"delta must be in (0, 1), got {delta}")
    if loss_range <= 0:
        raise EstimatorError(f"loss range must be > 0, got {loss_range}")
    if not 0.0 < alpha <= 1.0:
        raise EstimatorError(f"alpha must be in (0, 1], got {alpha}")
    base = loss_range**2 / (2.0 * epsilon**2) * math.log(2.0 / delta)
    return ShotBudget(
        epsilon=epsilon,
        delta=delta,
        loss_range=loss_range,
        alpha=alpha,
        m_fs=math.ceil(base),
        m_alpha=math.ceil(alpha * base),
    )


def cvar_hit_probability(p_star: float, alpha: float) -> float:
    """Probability that a draw from the CVaR tail is the quasi-optimum,
    given its full-distribution probability ``p_star``: the tail
    concentrates the lowest losses, boosting p_star by 1/alpha up to 1.
    """
    if not 0.0 <= p_star <= 1.0:
        raise EstimatorError(f"p_star must be in [0, 1], got {p_star}")
    if not 0.0 < alpha <= 1.0:
        raise EstimatorError(f"alpha must be in (0, 1], got {alpha}")
    if p_star < alpha:
        return p_star / alpha
    return 1.0
