from __future__ import annotations

import numpy as np
import pytest

from mdkpvqe.instances import MdkpInstance


def random_instance(
    rng: np.random.Generator,
    n_max: int = 16,
    d_max: int = 4,
    value_max: int = 100,
    weight_max: int = 30,
    n_min: int = 1,
) -> MdkpInstance:
    n = int(rng.integers(n_min, n_max + 1))
    d = int(rng.integers(1, d_max + 1))
    values = tuple(int(v) for v in rng.integers(1, value_max + 1, size=n))
    weights = tuple(
        tuple(int(w) for w in rng.integers(0, weight_max + 1, size=n))
        for _ in range(d)
    )
    # capacities between "almost nothing fits" and "everything fits"
    capacities = tuple(
        int(rng.integers(0, sum(row) + 1)) for row in weights
    )
    return MdkpInstance(
        name=f"rand{n}x{d}",
        n=n,
        d=d,
        values=values,
        weights=weights,
        capacities=capacities,
    )


@pytest.fixture
def toy():
    """The 2-item, 1-constraint instance used throughout the docs."""
    return MdkpInstance(
        name="toy", n=2, d=1, values=(3, 4), weights=((2, 3),), capacities=(4,),
    )


@pytest.fixture
def tiny():
    """One item that exactly fits: unique optimum is to take it."""
    return MdkpInstance(
        name="tiny", n=1, d=1, values=(1,), weights=((1,),), capacities=(1,),
    )
