"""Dense real statevector backend for the single-layer hardware-efficient
ansatz, plus shot sampling.

The circuit is an RY rotation on every qubit, a chain of CZ gates on
adjacent qubit pairs, and a second RY layer; with 2n angles total.  RY and
CZ have real matrices, so amplitudes are stored as float64 reals (half the
memory of a complex vector), capping runnable sizes at ``QUBIT_CAP``
qubits.

Bit convention
--------------
Qubit ``i`` (1-based) maps to decision variable ``x_i`` and to character
position ``i - 1`` of a sampled bitstring.  Amplitude indices treat qubit
1 as the most significant bit, so bitstring "10" on two qubits is
amplitude index 2.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

QUBIT_CAP = 26
NORMALIZATION_TOL = 1e-10


class SimulatorError(ValueError):
    pass


class QubitCapError(SimulatorError):
    """Requested size exceeds the dense-statevector cap."""


@dataclass(frozen=True)
class Statevector:
    amplitudes: np.ndarray
    n: int

    def probabilities(self) -> np.ndarray:
        return self.amplitudes * self.amplitudes


@dataclass(frozen=True)
class SampleSet:
    """Multiset of measured bitstrings."""

    counts: dict[str, int]
    total_shots: int

    def __post_init__(self) -> None:
        if sum(self.counts.values()) != self.total_shots:
            raise SimulatorError("counts do not sum to total_shots")


def bitstring_from_index(index: int, n: int) -> str:
    return format(index, f"0{n}b")


def index_from_bitstring(bits: str) -> int:
    return int(bits, 2)


def _apply_ry(state: np.ndarray, qubit: int, theta: float) -> None:
    """In-place RY(theta) on 1-based ``qubit``; axis 0 of the reshape is the
    qubit's bit because qubit 1 is the MSB."""
    c = np.cos(theta / 2.0)
    s = np.sin(theta / 2.0)
    view = state.reshape(1 << (qubit - 1), 2, -1)
    a0 = view[:, 0, :].copy()
    a1 = view[:, 1, :]
    view[:, 0, :] = c * a0 - s * a1
    view[:, 1, :] = s * a0 + c * a1


def _apply_cz(state: np.ndarray, qubit: int) -> None:
    """In-place CZ on the adjacent pair (qubit, qubit + 1)."""
    view = state.reshape(1 << (qubit - 1), 2, 2, -1)
    view[:, 1, 1, :] *= -1.0


def prepare_state(
    n: int, theta: np.ndarray | list[float], cap: int = QUBIT_CAP
) -> Statevector:
    """Exact amplitudes of the 2n-parameter single-layer ansatz on n qubits."""
    if n < 1:
        raise SimulatorError(f"need at least one qubit, got {n}")
    if n > cap:
        raise QubitCapError(f"{n} qubits exceeds the statevector cap of {cap}")
    theta = np.asarray(theta, dtype=np.float64)
    if theta.shape != (2 * n,):
        raise SimulatorError(
            f"expected {2 * n} angles for {n} qubits, got shape {theta.shape}"
        )
    if not np.all(np.isfinite(theta)):
        raise SimulatorError("angles must be finite")

    state = np.zeros(1 << n, dtype=np.float64)
    state[0] = 1.0
    for i in range(1, n + 1):
        _apply_ry(state, i, float(theta[i - 1]))
    for i in range(1, n):
        _apply_cz(state, i)
    for i in range(1, n + 1):
        _apply_ry(state, i, float(theta[n + i - 1]))
    return Statevector(amplitudes=state, n=n)


def sample_indices(
    state: Statevector, shots: int, rng: np.random.Generator
) -> np.ndarray:
    """Draw ``shots`` basis-state indices by inverse-CDF search.

    Deterministic given the generator state; the fast path used inside the
    optimization loop.
    """
    if shots < 1:
        raise SimulatorError(f"need shots >= 1, got {shots}")
    cdf = np.cumsum(state.probabilities())
    cdf[-1] = 1.0
    u = rng.random(shots)
    return np.searchsorted(cdf, u, side="right")


def sample(state: Statevector, shots: int, rng: np.random.Generator) -> SampleSet:
    """Multinomial draw of ``shots`` bitstrings from the state's probabilities."""
    idx = sample_indices(state, shots, rng)
    uniq, cnt = np.unique(idx, return_counts=True)
    counts = {
        bitstring_from_index(int(i), state.n): int(c) for i, c in zip(uniq, cnt)
    }
    return SampleSet(counts=counts, total_shots=shots)


def bit_convention() -> str:
    """Human-readable statement of the qubit/bitstring/index mapping."""
    return (
        "qubit i (1-based) <-> decision variable x_i <-> bitstring character "
        "i-1; amplitude index treats qubit 1 as the most significant bit"
    )
