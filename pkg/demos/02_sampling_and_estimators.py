"""Shot sampling and the two objective estimators.

Prepares the 2n-parameter ansatz state at random angles, samples it, and
contrasts the finite-sampling mean with the CVaR tail mean, which only
averages the best ceil(alpha * M) of the M sampled losses.  Also evaluates
the Hoeffding shot budget for a target sampling error.
"""

import numpy as np

from mdkpvqe import (
    EstimatorConfig,
    EstimatorKind,
    bundled_instance,
    compile_custom,
    estimate,
    loss_range,
    prepare_state,
    sample,
    shots_required,
)

inst = bundled_instance("pet2")
spec = compile_custom(inst)
rng = np.random.default_rng(7)

theta = rng.uniform(0, 2 * np.pi, 2 * inst.n)
state = prepare_state(inst.n, theta)
samples = sample(state, 4000, rng)
print(f"sampled {samples.total_shots} shots, "
      f"{len(samples.counts)} distinct bitstrings")

fs = estimate(samples, spec, EstimatorConfig(EstimatorKind.FS, shots=4000))
for alpha in (1.0, 0.5, 0.1, 0.01):
    cv = estimate(
        samples, spec, EstimatorConfig(EstimatorKind.CVAR, alpha=alpha, shots=4000)
    )
    print(f"CVaR(alpha={alpha:<4}): {cv:>12.2f}")
print(f"FS mean:          {fs:>12.2f}  (identical to CVaR at alpha=1)")

r = loss_range(spec, inst.known_optimum)
for eps in (100.0, 500.0):
    budget = shots_required(eps, 0.05, r.range, alpha=0.1)
    print(f"eps={eps:>5}: M_fs={budget.m_fs:>8}, M_alpha={budget.m_alpha:>8}")
