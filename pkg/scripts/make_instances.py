"""Regenerate the bundled MDKP benchmark catalog.

The catalog mirrors the (name, n, d) shapes of the classic OR-Library
multi-dimensional knapsack families (hp, pb, pet).  The original
OR-Library coefficient files are not redistributed here; coefficients are
generated deterministically from per-name seeds in the same style
(uncorrelated integer profits and weights, capacities at half the total
weight per dimension), and each header optimum is computed by the exact
branch-and-bound solver.  Instances too large for the solver budget carry
a 0 (unknown) optimum.

Usage: python scripts/make_instances.py
"""

from __future__ import annotations

import pathlib
import zlib

import numpy as np

from mdkpvqe.instances import MdkpInstance, exact_optimum, serialize_instance

CATALOG = [
    ("hp1", 28, 4),
    ("hp2", 35, 4),
    ("pb1", 27, 4),
    ("pb2", 34, 4),
    ("pb4", 29, 2),
    ("pb5", 20, 10),
    ("pet2", 10, 10),
    ("pet3", 15, 10),
    ("pet4", 20, 10),
    ("pet5", 28, 10),
    ("pet6", 39, 5),
    ("pet7", 50, 5),
]

SOLVER_N_CAP = 50  # generation-time override of the library's default budget
CAPACITY_RATIO = 0.5


def generate(name: str, n: int, d: int) -> MdkpInstance:
    rng = np.random.default_rng(zlib.crc32(name.encode()))
    values = tuple(int(v) * 10 for v in rng.integers(10, 100, size=n))
    weights = tuple(
        tuple(int(w) for w in rng.integers(1, 60, size=n)) for _ in range(d)
    )
    capacities = tuple(int(CAPACITY_RATIO * sum(row)) for row in weights)
    inst = MdkpInstance(
        name=name, n=n, d=d, values=values, weights=weights, capacities=capacities
    )
    if n <= SOLVER_N_CAP:
        _, opt = exact_optimum(inst, max_n=SOLVER_N_CAP)
        inst = MdkpInstance(
            name=name, n=n, d=d, values=values, weights=weights,
            capacities=capacities, known_optimum=opt,
        )
    return inst


def main() -> None:
    root = pathlib.Path(__file__).resolve().parent.parent
    targets = [
        root / "src" / "mdkpvqe" / "data" / "instances",
        root / "instances",
    ]
    for target in targets:
        target.mkdir(parents=True, exist_ok=True)
    for name, n, d in CATALOG:
        inst = generate(name, n, d)
        text = serialize_instance(inst)
        for target in targets:
            (target / f"{name}.txt").write_text(text)
        print(f"{name}: n={n} d={d} optimum={inst.known_optimum}")


if __name__ == "__main__":
    main()
