"""End-to-end VQE on the 10-qubit pet2 instance.

Runs a few Powell-optimized trials with the CVaR objective and reports the
optimality gap of each trial's extracted solution.  Increase ``trials`` to
20 and ``maxfev`` to 10000 for the full benchmark settings (a few minutes
on one core).
"""

from mdkpvqe import (
    EstimatorConfig,
    EstimatorKind,
    VqeConfig,
    bundled_instance,
    compile_custom,
    optimality_gap,
    run_trials,
)

inst = bundled_instance("pet2")
spec = compile_custom(inst)

config = VqeConfig(
    estimator=EstimatorConfig(EstimatorKind.CVAR, alpha=0.1, shots=4000),
    trials=5,
    maxfev=3000,
    xtol=1e-4,
    shots=4000,
    seed=42,
)

print(f"{inst.name}: {spec.total_qubits} qubits, optimum {inst.known_optimum}")
for res in run_trials(spec, config):
    if res.feasible:
        gap = optimality_gap(res.objective_value, inst.known_optimum)
        status = f"objective {res.objective_value} (gap {gap:.4f})"
    else:
        status = "infeasible"
    print(f"trial {res.trial_index}: {status}, nfev {res.nfev}, "
          f"p* {res.quasi_opt_probability:.3f}, x*={res.quasi_opt.as_string()}")
