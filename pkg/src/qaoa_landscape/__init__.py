"""Depth-1 QAOA landscapes from solution-space structure.

The package evaluates success-probability landscapes of depth-1 QAOA
circuits whose cost operator projects onto a target set, approximates the
ensemble-expected landscape from Hamming-distance statistics alone, and
compares a non-iterative pipeline (optimise once per problem, sample every
instance at the shared angles) against per-instance optimisation.
"""

from .analytic import EXACT_MODE, MODES, PAPER_MODE, UniformModel, summary_analytic
from .core import (
    Angles,
    AngleGrid,
    BitString,
    ComputationError,
    TargetSpace,
    UsageError,
    binomial,
    default_grid,
    distance_profile,
    hamming_distance,
)
from .landscape import (
    LandscapeGrid,
    approx_expected_f1,
    c_k,
    error_bound,
    eval_grid,
    f1_closed,
    f1_statevector,
    f_n,
    w_matrix,
)
from .optimize import OptConfig, OptResult, maximize, optimize_instance, optimize_problem
from .problems import Ensemble, Instance, build_ensemble
from .structure import InstanceStats, StructuralSummary, aggregate, instance_stats

__version__ = "0.1.0"

__all__ = [
    "Angles",
    "AngleGrid",
    "BitString",
    "ComputationError",
    "Ensemble",
    "EXACT_MODE",
    "Instance",
    "InstanceStats",
    "LandscapeGrid",
    "MODES",
    "OptConfig",
    "OptResult",
    "PAPER_MODE",
    "StructuralSummary",
    "TargetSpace",
    "UniformModel",
    "UsageError",
    "aggregate",
    "approx_expected_f1",
    "binomial",
    "build_ensemble",
    "c_k",
    "default_grid",
    "distance_profile",
    "error_bound",
    "eval_grid",
    "f1_closed",
    "f1_statevector",
    "f_n",
    "hamming_distance",
    "instance_stats",
    "maximize",
    "optimize_instance",
    "optimize_problem",
    "summary_analytic",
    "w_matrix",
    "__version__",
]
