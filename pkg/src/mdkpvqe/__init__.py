"""Slack-free penalty VQE pipeline for multi-dimensional knapsack problems.

Submodules:

* :mod:`mdkpvqe.instances` - MDKP data model, parsing, exact oracle.
* :mod:`mdkpvqe.formulation` - step-penalty and slack-QUBO losses.
* :mod:`mdkpvqe.simulator` - dense real statevector ansatz + sampling.
* :mod:`mdkpvqe.estimators` - finite-sampling / CVaR estimates, shot budgets.
* :mod:`mdkpvqe.vqe` - Powell-driven variational loop.
* :mod:`mdkpvqe.harness` - benchmark sweeps and CSV/JSON reports.
"""

from .estimators import (
    EstimatorConfig,
    EstimatorKind,
    cvar_hit_probability,
    estimate,
    quasi_optimum,
    shots_required,
)
from .formulation import (
    LossSpec,
    LossVariant,
    compile_custom,
    compile_slack,
    evaluate,
    heaviside,
    loss_range,
    penalty_upper_bound,
    qubit_report,
)
from .harness import RunReport, bench, optimality_gap
from .instances import (
    Assignment,
    MdkpInstance,
    bundled_instance,
    bundled_instances,
    exact_optimum,
    exhaustive_optimum,
    is_feasible,
    parse_instance,
    parse_instance_file,
    serialize_instance,
)
from .simulator import SampleSet, Statevector, prepare_state, sample
from .vqe import TrialResult, VqeConfig, powell_minimize, run_trials

__version__ = "0.1.0"

__all__ = [
    "Assignment",
    "EstimatorConfig",
    "EstimatorKind",
    "LossSpec",
    "LossVariant",
    "MdkpInstance",
    "RunReport",
    "SampleSet",
    "Statevector",
    "TrialResult",
    "VqeConfig",
    "bench",
    "bundled_instance",
    "bundled_instances",
    "compile_custom",
    "compile_slack",
    "cvar_hit_probability",
    "estimate",
    "evaluate",
    "exact_optimum",
    "exhaustive_optimum",
    "heaviside",
    "is_feasible",
    "loss_range",
    "optimality_gap",
    "parse_instance",
    "parse_instance_file",
    "penalty_upper_bound",
    "powell_minimize",
    "prepare_state",
    "qubit_report",
    "quasi_optimum",
    "run_trials",
    "sample",
    "serialize_instance",
    "shots_required",
]
