"""Compile MDKP instances into classical losses over bitstrings.

Two variants are supported:

* ``CUSTOM_STEP`` - slack-free loss ``-sum v_i x_i + sum_j lambda_j
  Theta(load_j - W_j)`` with the Heaviside step ``Theta``; uses n qubits.
* ``SLACK_QUADRATIC`` - conventional QUBO loss ``-sum v_i x_i + sum_j
  lambda_j (load_j - W_j + slack_j)^2`` with binary slack registers;
  uses ``n + sum_j ceil(log2(W_j + 1))`` qubits.

Both losses are evaluated classically on bitstrings; since the problem
Hamiltonian is diagonal, the loss value of a sampled bitstring is exactly
the eigenvalue that a measurement would report.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

import numpy as np

from .instances import InstanceError, MdkpInstance

EVALUATE_ALL_QUBIT_CAP = 24


class LossVariant(Enum):
    CUSTOM_STEP = "custom"
    SLACK_QUADRATIC = "slack"


@dataclass(frozen=True)
class LossSpec:
    """A compiled loss over bitstrings of length ``total_qubits``."""

    variant: LossVariant
    instance: MdkpInstance
    lambdas: tuple[int, ...]
    slack_bits: tuple[int, ...]
    total_qubits: int

    def __post_init__(self) -> None:
        if len(self.lambdas) != self.instance.d:
            raise InstanceError("one penalty factor per constraint required")
        if any(lam <= 0 for lam in self.lambdas):
            raise InstanceError("penalty factors must be positive")
        if self.variant is LossVariant.CUSTOM_STEP:
            expected = self.instance.n
        else:
            expected = self.instance.n + sum(self.slack_bits)
        if self.total_qubits != expected:
            raise InstanceError(
                f"total_qubits {self.total_qubits} inconsistent, expected {expected}"
            )


@dataclass(frozen=True)
class LossValue:
    value: int
    violated_constraints: int


@dataclass(frozen=True)
class LossRange:
    """Loss bounds [lo, hi] and range R = hi - lo.

    ``exact_formula`` is False for the slack variant, where the reported
    ``hi`` is a computed upper bound on the squared-penalty terms rather
    than a closed-form range.
    """

    lo: int
    hi: int
    range: int
    exact_formula: bool


def heaviside(h: int) -> int:
    """Step penalty indicator: 1 for a violated constraint (h > 0), else 0."""
    return 1 if h > 0 else 0


def penalty_upper_bound(inst: MdkpInstance) -> tuple[int, int]:
    """Penalty-factor rule: bound = sum of profits, global lambda = 2 * bound.

    One constraint violation then always offsets the best possible objective.
    """
    lambda_ub = int(sum(inst.values))
    return lambda_ub, 2 * lambda_ub


def compile_custom(inst: MdkpInstance) -> LossSpec:
    """Slack-free step-penalty loss on n qubits."""
    _, lam = penalty_upper_bound(inst)
    return LossSpec(
        variant=LossVariant.CUSTOM_STEP,
        instance=inst,
        lambdas=(lam,) * inst.d,
        slack_bits=(),
        total_qubits=inst.n,
    )


def slack_register_width(capacity: int) -> int:
    """Bits needed to represent every slack value in [0, capacity]."""
    return max(0, math.ceil(math.log2(capacity + 1))) if capacity > 0 else 0


def compile_slack(inst: MdkpInstance) -> LossSpec:
    """Quadratic slack-variable QUBO loss on n + sum_j N_j qubits."""
    _, lam = penalty_upper_bound(inst)
    widths = tuple(slack_register_width(c) for c in inst.capacities)
    return LossSpec(
        variant=LossVariant.SLACK_QUADRATIC,
        instance=inst,
        lambdas=(lam,) * inst.d,
        slack_bits=widths,
        total_qubits=inst.n + sum(widths),
    )


def compile_spec(inst: MdkpInstance, variant: LossVariant | str) -> LossSpec:
    variant = LossVariant(variant)
    if variant is LossVariant.CUSTOM_STEP:
        return compile_custom(inst)
    return compile_slack(inst)


def slack_values(spec: LossSpec, bits: Sequence[int]) -> tuple[int, ...]:
    """Decode the slack registers (LSB-first within each register)."""
    if spec.variant is not LossVariant.SLACK_QUADRATIC:
        return ()
    out = []
    pos = spec.instance.n
    for width in spec.slack_bits:
        out.append(sum(int(bits[pos + l]) << l for l in range(width)))
        pos += width
    return tuple(out)


def evaluate(spec: LossSpec, bits: Sequence[int] | str) -> LossValue:
    """Loss eigenvalue of one bitstring, plus the count of violated constraints.

    For the slack variant the first n bits are the decision variables and
    the rest the concatenated slack registers in constraint order;
    ``violated_constraints`` ignores the slack bits.
    """
    if isinstance(bits, str):
        bits = [int(c) for c in bits]
    else:
        bits = [int(b) for b in bits]
    if len(bits) != spec.total_qubits:
        raise InstanceError(
            f"bitstring length {len(bits)} != total_qubits {spec.total_qubits}"
        )
    inst = spec.instance
    x = bits[: inst.n]
    value = -sum(v * b for v, b in zip(inst.values, x))
    violations = 0
    if spec.variant is LossVariant.CUSTOM_STEP:
        for j in range(inst.d):
            h = sum(w * b for w, b in zip(inst.weights[j], x)) - inst.capacities[j]
            step = heaviside(h)
            violations += step
            value += spec.lambdas[j] * step
    else:
        slacks = slack_values(spec, bits)
        for j in range(inst.d):
            h = sum(w * b for w, b in zip(inst.weights[j], x)) - inst.capacities[j]
            if h > 0:
                violations += 1
            value += spec.lambdas[j] * (h + slacks[j]) ** 2
    return LossValue(value=int(value), violated_constraints=violations)


def evaluate_all(spec: LossSpec, qubit_cap: int = EVALUATE_ALL_QUBIT_CAP) -> np.ndarray:
    """Loss table over all 2^total_qubits bitstrings, indexed per the
    amplitude convention (bit position 0 of the string is the MSB).
    """
    nq = spec.total_qubits
    if nq > qubit_cap:
        raise InstanceError(
            f"evaluate_all capped at {qubit_cap} qubits, spec needs {nq}"
        )
    inst = spec.instance
    size = 1 << nq
    idx = np.arange(size, dtype=np.int64)

    def bit(pos: int) -> np.ndarray:
        # string position pos corresponds to index bit nq-1-pos
        return (idx >> (nq - 1 - pos)) & 1

    value = np.zeros(size, dtype=np.int64)
    for i in range(inst.n):
        if inst.values[i]:
            value -= inst.values[i] * bit(i)
    if spec.variant is LossVariant.CUSTOM_STEP:
        for j in range(inst.d):
            load = np.zeros(size, dtype=np.int64)
            for i in range(inst.n):
                if inst.weights[j][i]:
                    load += inst.weights[j][i] * bit(i)
            value += spec.lambdas[j] * (load > inst.capacities[j])
    else:
        pos = inst.n
        for j in range(inst.d):
            h = np.full(size, -inst.capacities[j], dtype=np.int64)
            for i in range(inst.n):
                if inst.weights[j][i]:
                    h += inst.weights[j][i] * bit(i)
            for l in range(spec.slack_bits[j]):
                h += (1 << l) * bit(pos + l)
            pos += spec.slack_bits[j]
            value += spec.lambdas[j] * h * h
    return value


def loss_range(spec: LossSpec, c_true: int) -> LossRange:
    """Loss bounds used by the shot-budget analysis.

    Custom variant: exact closed form lo = -C_true, hi = d * lambda.
    Slack variant: hi is a worst-case bound over x and slack assignments,
    flagged as non-exact.
    """
    inst = spec.instance
    lo = -int(c_true)
    if spec.variant is LossVariant.CUSTOM_STEP:
        hi = sum(spec.lambdas)
        exact = True
    else:
        hi = 0
        for j in range(inst.d):
            max_load = sum(inst.weights[j])
            max_slack = (1 << spec.slack_bits[j]) - 1
            worst = max(
                abs(max_load - inst.capacities[j] + max_slack),
                inst.capacities[j],
            )
            hi += spec.lambdas[j] * worst * worst
        exact = False
    return LossRange(lo=lo, hi=int(hi), range=int(hi) - lo, exact_formula=exact)


@dataclass(frozen=True)
class QubitCount:
    name: str
    custom_qubits: int
    slack_qubits: int

    @property
    def delta(self) -> int:
        return self.slack_qubits - self.custom_qubits


def qubit_report(instances: Sequence[MdkpInstance]) -> list[QubitCount]:
    """Per-instance qubit counts for both formulations."""
    return [
        QubitCount(
            name=inst.name,
            custom_qubits=compile_custom(inst).total_qubits,
            slack_qubits=compile_slack(inst).total_qubits,
        )
        for inst in instances
    ]


def qubit_report_csv(rows: Sequence[QubitCount]) -> str:
    lines = ["name,custom,slack,delta"]
    for row in rows:
        lines.append(f"{row.name},{row.custom_qubits},{row.slack_qubits},{row.delta}")
    return "\n".join(lines) + "\n"
