"""Multi-dimensional knapsack (MDKP) data model, file I/O and exact solvers.

An MDKP instance asks to maximize ``sum_i v_i x_i`` over ``x in {0,1}^n``
subject to ``sum_i w[j][i] x_i <= W[j]`` for each of ``d`` capacity
constraints.  All coefficients are nonnegative 64-bit integers.

Canonical text format (whitespace separated tokens)::

    n d C          # C = known optimum, 0 if unknown
    v_1 ... v_n
    w_11 ... w_1n  # one row per constraint, d rows
    ...
    W_1 ... W_d

The ``orlib`` format accepts the same token order but tolerates ``#``
comments, blank lines and an optional leading problem count of 1, which
absorbs the header variations found in OR-Library style files.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from importlib import resources
from typing import Iterator, Sequence

import numpy as np

EXHAUSTIVE_N_CAP = 24
BRANCH_AND_BOUND_N_CAP = 40


class InstanceError(ValueError):
    """Malformed instance data or file."""


class ParseError(InstanceError):
    """Malformed instance text; carries 1-based line and column."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class OracleBudgetError(InstanceError):
    """Instance too large for the exact solver."""


class InstanceFormat(Enum):
    CANONICAL = "canonical"
    ORLIB = "orlib"


@dataclass(frozen=True)
class MdkpInstance:
    """Immutable MDKP problem data.

    ``known_optimum`` is ``None`` when the source file carried no optimum
    (a 0 in the header).  It is never trusted blindly; see
    :func:`verify_known_optimum`.
    """

    name: str
    n: int
    d: int
    values: tuple[int, ...]
    weights: tuple[tuple[int, ...], ...]
    capacities: tuple[int, ...]
    known_optimum: int | None = None

    def __post_init__(self) -> None:
        if self.n < 1:
            raise InstanceError(f"{self.name}: need n >= 1, got {self.n}")
        if self.d < 1:
            raise InstanceError(f"{self.name}: need d >= 1, got {self.d}")
        if len(self.values) != self.n:
            raise InstanceError(
                f"{self.name}: expected {self.n} values, got {len(self.values)}"
            )
        if len(self.weights) != self.d:
            raise InstanceError(
                f"{self.name}: expected {self.d} weight rows, got {len(self.weights)}"
            )
        for j, row in enumerate(self.weights):
            if len(row) != self.n:
                raise InstanceError(
                    f"{self.name}: weight row {j} has {len(row)} entries, expected {self.n}"
                )
        if len(self.capacities) != self.d:
            raise InstanceError(
                f"{self.name}: expected {self.d} capacities, got {len(self.capacities)}"
            )
        for label, seq in (
            ("value", self.values),
            ("capacity", self.capacities),
            ("weight", [w for row in self.weights for w in row]),
        ):
            for entry in seq:
                if entry < 0:
                    raise InstanceError(f"{self.name}: negative {label} {entry}")
        if self.known_optimum is not None and self.known_optimum < 0:
            raise InstanceError(
                f"{self.name}: negative known optimum {self.known_optimum}"
            )

    @cached_property
    def values_array(self) -> np.ndarray:
        return np.asarray(self.values, dtype=np.int64)

    @cached_property
    def weights_array(self) -> np.ndarray:
        return np.asarray(self.weights, dtype=np.int64)

    @cached_property
    def capacities_array(self) -> np.ndarray:
        return np.asarray(self.capacities, dtype=np.int64)


@dataclass(frozen=True)
class Assignment:
    """A 0/1 decision vector for the n item variables."""

    bits: tuple[int, ...]

    def __post_init__(self) -> None:
        for b in self.bits:
            if b not in (0, 1):
                raise InstanceError(f"assignment entries must be 0/1, got {b}")

    def __len__(self) -> int:
        return len(self.bits)

    def as_string(self) -> str:
        return "".join(str(b) for b in self.bits)


def is_feasible(inst: MdkpInstance, x: Assignment | Sequence[int]) -> bool:
    """True iff every capacity constraint holds for ``x``."""
    bits = x.bits if isinstance(x, Assignment) else tuple(x)
    if len(bits) != inst.n:
        raise InstanceError(
            f"assignment length {len(bits)} != n = {inst.n}"
        )
    xs = np.asarray(bits, dtype=np.int64)
    loads = inst.weights_array @ xs
    return bool(np.all(loads <= inst.capacities_array))


def objective_value(inst: MdkpInstance, x: Assignment | Sequence[int]) -> int:
    bits = x.bits if isinstance(x, Assignment) else tuple(x)
    if len(bits) != inst.n:
        raise InstanceError(f"assignment length {len(bits)} != n = {inst.n}")
    return int(sum(v * b for v, b in zip(inst.values, bits)))


# ---------------------------------------------------------------------------
# parsing / serialization


def _tokens_with_positions(
    text: str, fmt: InstanceFormat
) -> Iterator[tuple[str, int, int]]:
    for lineno, line in enumerate(text.splitlines(), start=1):
        if fmt is InstanceFormat.ORLIB:
            hash_pos = line.find("#")
            if hash_pos >= 0:
                line = line[:hash_pos]
        col = 0
        for tok in line.split():
            col = line.index(tok, col)
            yield tok, lineno, col + 1
            col += len(tok)


class _TokenStream:
    def __init__(self, text: str, fmt: InstanceFormat):
        self._toks = list(_tokens_with_positions(text, fmt))
        self._pos = 0
        self._last = (1, 1)

    def next_int(self, what: str) -> int:
        if self._pos >= len(self._toks):
            line, col = self._last
            raise ParseError(f"unexpected end of input, expected {what}", line, col)
        tok, line, col = self._toks[self._pos]
        self._pos += 1
        self._last = (line, col)
        try:
            value = int(tok)
        except ValueError:
            raise ParseError(f"non-integer token {tok!r} for {what}", line, col) from None
        return value

    def peek(self) -> tuple[str, int, int] | None:
        if self._pos >= len(self._toks):
            return None
        return self._toks[self._pos]

    def expect_end(self) -> None:
        extra = self.peek()
        if extra is not None:
            tok, line, col = extra
            raise ParseError(
                f"trailing token {tok!r}: dimension mismatch with header", line, col
            )


def parse_instance(
    text: str,
    fmt: InstanceFormat | str = InstanceFormat.CANONICAL,
    name: str = "unnamed",
) -> MdkpInstance:
    """Parse instance text in the canonical or orlib format.

    A known optimum of 0 in the header is stored as ``None`` (unknown).
    Errors carry line/column of the offending token.
    """
    fmt = InstanceFormat(fmt)
    stream = _TokenStream(text, fmt)

    first = stream.next_int("n (or problem count)")
    if fmt is InstanceFormat.ORLIB and first == 1:
        # optional leading problem count of a single-problem file
        nxt = stream.peek()
        if nxt is not None:
            first = stream.next_int("n")
    n = first
    d = stream.next_int("d")
    opt = stream.next_int("known optimum")
    if n < 1 or d < 1:
        raise ParseError(f"malformed header: n={n}, d={d}", 1, 1)

    def read_row(count: int, what: str) -> tuple[int, ...]:
        row = []
        for _ in range(count):
            value = stream.next_int(what)
            if value < 0:
                line, col = stream._last
                raise ParseError(f"negative {what} {value}", line, col)
            row.append(value)
        return tuple(row)

    values = read_row(n, "value")
    weights = tuple(read_row(n, "weight") for _ in range(d))
    capacities = read_row(d, "capacity")
    stream.expect_end()

    return MdkpInstance(
        name=name,
        n=n,
        d=d,
        values=values,
        weights=weights,
        capacities=capacities,
        known_optimum=opt if opt > 0 else None,
    )


def parse_instance_file(
    path, fmt: InstanceFormat | str = InstanceFormat.CANONICAL
) -> MdkpInstance:
    import os

    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    name = os.path.splitext(os.path.basename(str(path)))[0]
    return parse_instance(text, fmt, name=name)


def serialize_instance(inst: MdkpInstance) -> str:
    """Canonical text for ``inst``; parse -> serialize round-trips."""
    lines = [f"{inst.n} {inst.d} {inst.known_optimum or 0}"]
    lines.append(" ".join(str(v) for v in inst.values))
    for row in inst.weights:
        lines.append(" ".join(str(w) for w in row))
    lines.append(" ".join(str(c) for c in inst.capacities))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# bundled catalog

BUNDLED_NAMES = (
    "hp1", "hp2", "pb1", "pb2", "pb4", "pb5",
    "pet2", "pet3", "pet4", "pet5", "pet6", "pet7",
)


def bundled_instance(name: str) -> MdkpInstance:
    """Load one of the shipped benchmark instances by name."""
    if name not in BUNDLED_NAMES:
        raise InstanceError(f"no bundled instance named {name!r}")
    text = (
        resources.files("mdkpvqe").joinpath(f"data/instances/{name}.txt").read_text()
    )
    return parse_instance(text, InstanceFormat.CANONICAL, name=name)


def bundled_instances() -> list[MdkpInstance]:
    return [bundled_instance(name) for name in BUNDLED_NAMES]


# ---------------------------------------------------------------------------
# exact solvers


def exhaustive_optimum(inst: MdkpInstance) -> tuple[Assignment, int]:
    """Vectorized scan of all 2^n assignments; independent oracle, n <= 24."""
    if inst.n > EXHAUSTIVE_N_CAP:
        raise OracleBudgetError(
            f"{inst.name}: exhaustive scan capped at n <= {EXHAUSTIVE_N_CAP}, got {inst.n}"
        )
    n = inst.n
    size = 1 << n
    obj = np.zeros(size, dtype=np.int64)
    feasible = np.ones(size, dtype=bool)
    idx = np.arange(size, dtype=np.int64)
    # bit i (1-based variable) sits at index bit n-i (variable 1 = MSB)
    bits = [(idx >> (n - 1 - i)) & 1 for i in range(n)]
    for i in range(n):
        obj += inst.values[i] * bits[i]
    for j in range(inst.d):
        load = np.zeros(size, dtype=np.int64)
        for i in range(n):
            if inst.weights[j][i]:
                load += inst.weights[j][i] * bits[i]
        feasible &= load <= inst.capacities[j]
    masked = np.where(feasible, obj, -1)
    best = int(masked.argmax())
    best_bits = tuple(int((best >> (n - 1 - i)) & 1) for i in range(n))
    return Assignment(best_bits), int(masked[best])


def _fractional_bound(
    order: list[int], ratios_w: np.ndarray, values: tuple[int, ...],
    start: int, cap: int,
) -> float:
    """Dantzig bound of the single-constraint relaxation over items >= start."""
    bound = 0.0
    remaining = cap
    for i in order:
        if i < start:
            continue
        w = ratios_w[i]
        if w == 0:
            bound += values[i]
        elif w <= remaining:
            remaining -= w
            bound += values[i]
        else:
            bound += values[i] * (remaining / w)
            break
    return bound


def exact_optimum(
    inst: MdkpInstance, max_n: int = BRANCH_AND_BOUND_N_CAP
) -> tuple[Assignment, int]:
    """Depth-first branch and bound, items ordered by value density.

    The node bound is the tightest single-constraint fractional-knapsack
    relaxation over the undecided suffix.  Always returns a feasible
    maximizer (x = 0 is feasible since capacities are nonnegative).
    """
    if inst.n > max_n:
        raise OracleBudgetError(
            f"{inst.name}: branch and bound capped at n <= {max_n}, got {inst.n}"
        )
    n, d = inst.n, inst.d
    values = inst.values
    weights = inst.weights_array
    caps = inst.capacities_array.copy()

    # density order: value per unit of capacity-normalized weight
    norm = weights / np.maximum(inst.capacities_array[:, None], 1)
    density = inst.values_array / np.maximum(norm.sum(axis=0), 1e-12)
    perm = sorted(range(n), key=lambda i: -density[i])
    pvalues = tuple(values[i] for i in perm)
    pweights = weights[:, perm]

    # per-constraint item orders by value/weight ratio (zero weight first)
    ratio_orders = []
    for j in range(d):
        wj = pweights[j]
        order = sorted(
            range(n),
            key=lambda i: -(pvalues[i] / wj[i]) if wj[i] else -np.inf,
        )
        ratio_orders.append(order)
    suffix_value = [0] * (n + 1)
    for i in range(n - 1, -1, -1):
        suffix_value[i] = suffix_value[i + 1] + pvalues[i]

    best_value = 0
    best_bits = [0] * n
    chosen = [0] * n
    remaining = caps.astype(np.int64)

    def bound(depth: int) -> float:
        ub = float(suffix_value[depth])
        for j in range(d):
            bj = _fractional_bound(
                ratio_orders[j], pweights[j], pvalues, depth, int(remaining[j])
            )
            if bj < ub:
                ub = bj
        return ub

    def dfs(depth: int, value: int) -> None:
        nonlocal best_value, best_bits
        if value > best_value:
            best_value = value
            best_bits = chosen.copy()
        if depth == n:
            return
        if value + bound(depth) <= best_value:
            return
        wcol = pweights[:, depth]
        if np.all(wcol <= remaining):
            chosen[depth] = 1
            remaining[:] -= wcol
            dfs(depth + 1, value + pvalues[depth])
            remaining[:] += wcol
            chosen[depth] = 0
        dfs(depth + 1, value)

    dfs(0, 0)

    bits = [0] * n
    for pos, i in enumerate(perm):
        bits[i] = best_bits[pos]
    assignment = Assignment(tuple(bits))
    assert is_feasible(inst, assignment)
    return assignment, best_value


def verify_known_optimum(inst: MdkpInstance) -> int:
    """Check the file-recorded optimum against the oracle; error on mismatch."""
    _, opt = exact_optimum(inst)
    if inst.known_optimum is not None and inst.known_optimum != opt:
        raise InstanceError(
            f"{inst.name}: recorded optimum {inst.known_optimum} != oracle optimum {opt}"
        )
    return opt


def true_optimum(inst: MdkpInstance) -> int:
    """Ground-truth objective C_true, from metadata if present, else the oracle."""
    if inst.known_optimum is not None:
        return inst.known_optimum
    _, opt = exact_optimum(inst)
    return opt
