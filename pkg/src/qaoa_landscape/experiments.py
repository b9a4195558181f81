"""Experiment drivers: landscape comparisons and the two-arm success study.

The non-iterative pipeline optimises angles once per problem on the
structural approximation and reuses them for every instance; the standard
pipeline optimises every instance on its own landscape.  Shot noise uses an
independent RNG stream per (instance, arm), so results do not depend on
evaluation order or thread count.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .core import Angles, AngleGrid, TargetSpace, UsageError
from .landscape import (
    LandscapeGrid,
    approx_curve,
    approx_grid,
    error_bound,
    f1_closed,
    f1_closed_curve,
    f1_closed_grid,
    qaoa_state,
)
from .optimize import OptConfig, OptResult, optimize_instance, optimize_problem
from .problems import Ensemble
from .structure import StructuralSummary, aggregate, instance_stats


def _thread_map(fn, items, threads: int | None):
    """Map preserving item order; thread count never changes the results."""
    workers = threads if threads and threads > 0 else (os.cpu_count() or 1)
    if workers == 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def shot_rng(seed: int, instance_id: int, arm: int) -> np.random.Generator:
    """The sampling stream owned by one instance under one pipeline arm."""
    return np.random.default_rng(
        np.random.SeedSequence(seed, spawn_key=(instance_id, arm))
    )


def sample_shots(
    space: TargetSpace, angles: Angles, shots: int, rng: np.random.Generator
) -> int:
    """Number of target hits among `shots` measurements of the prepared state.

    Sampling inverts the cumulative distribution of the exact 2^n outcome
    probabilities, so the hit count is binomial with success probability F1.
    """
    if shots < 1:
        raise UsageError(f"shots must be >= 1, got {shots}")
    amps = qaoa_state(space, angles.beta, angles.gamma)
    probs = np.abs(amps) ** 2
    cdf = np.cumsum(probs)
    draws = np.searchsorted(cdf, rng.random(shots), side="right")
    draws = np.minimum(draws, probs.size - 1)  # guard the cdf's rounding at 1.0
    is_target = np.zeros(probs.size, dtype=bool)
    is_target[space.states_array.astype(np.int64)] = True
    return int(is_target[draws].sum())


@dataclass(frozen=True, eq=False)
class CrossSection:
    """A fixed-gamma slice: per-beta ensemble mean, spread and approximation."""

    gamma_c: float
    betas: np.ndarray
    values: np.ndarray  # ensemble mean F1 per beta
    stddev: np.ndarray
    approx: np.ndarray
    cloud: np.ndarray | None = None  # (instances, betas) individual values


@dataclass(frozen=True, eq=False)
class LandscapeComparison:
    """Grids of the empirical mean landscape against the approximation."""

    summary: StructuralSummary
    mean: LandscapeGrid  # carries the per-point population stddev
    approx: LandscapeGrid
    error: LandscapeGrid  # |mean - approx|
    bound: LandscapeGrid  # per-point Cauchy-Schwarz bound on the error
    cross_section: CrossSection


def run_landscape_comparison(
    ensemble: Ensemble,
    grid: AngleGrid,
    gamma_c: float = 1.2,
    threads: int | None = None,
    keep_cloud: bool = False,
) -> LandscapeComparison:
    """Empirical mean landscape vs the structural approximation on one grid."""
    spaces = [inst.target for inst in ensemble.instances]
    summary = aggregate([instance_stats(space) for space in spaces])

    stack = np.array(_thread_map(lambda s: f1_closed_grid(s, grid), spaces, threads))
    mean_values = stack.mean(axis=0)
    std_values = stack.std(axis=0)
    approx_values = approx_grid(summary, grid)

    # per-point bound from the spread of sizes and of mean |c_k|^2 values
    sizes = np.array([len(s) for s in spaces], dtype=np.float64) / (1 << ensemble.n)
    ck_stack = stack / sizes[:, None]
    bound_values = np.sqrt(sizes.var() * ck_stack.var(axis=0))

    betas = grid.betas()
    section_stack = np.array(
        _thread_map(lambda s: f1_closed_curve(s, betas, gamma_c), spaces, threads)
    )
    cross = CrossSection(
        gamma_c=gamma_c,
        betas=betas,
        values=section_stack.mean(axis=0),
        stddev=section_stack.std(axis=0),
        approx=approx_curve(summary, betas, gamma_c),
        cloud=section_stack if keep_cloud else None,
    )
    return LandscapeComparison(
        summary=summary,
        mean=LandscapeGrid(grid=grid, values=mean_values, stddev=std_values),
        approx=LandscapeGrid(grid=grid, values=approx_values),
        error=LandscapeGrid(grid=grid, values=np.abs(mean_values - approx_values)),
        bound=LandscapeGrid(grid=grid, values=bound_values),
        cross_section=cross,
    )


@dataclass(frozen=True, eq=False)
class ArmOutcome:
    """One instance's result under one pipeline arm."""

    angles: Angles
    success_prob: float  # exact F1 at the arm's angles
    shots_hit: int


@dataclass(frozen=True, eq=False)
class InstanceComparison:
    id: int
    standard: ArmOutcome
    noniterative: ArmOutcome


@dataclass(frozen=True, eq=False)
class ComparisonReport:
    """Two-arm study over one ensemble."""

    family: str
    n: int
    shots: int
    seed: int
    shared_angles: Angles  # the problem-global angles of the non-iterative arm
    shared_value: float  # approximation value at those angles
    records: tuple[InstanceComparison, ...]
    mean_standard: float
    std_standard: float
    mean_noniterative: float
    std_noniterative: float


STANDARD_ARM = 0
NONITERATIVE_ARM = 1


def run_success_comparison(
    ensemble: Ensemble,
    shots: int,
    seed: int,
    config: OptConfig = OptConfig(),
    threads: int | None = None,
) -> ComparisonReport:
    """Per-instance optimisation against one problem-global optimisation."""
    spaces = [inst.target for inst in ensemble.instances]
    summary = aggregate([instance_stats(space) for space in spaces])
    shared: OptResult = optimize_problem(summary, config)

    def run_one(item) -> InstanceComparison:
        instance_id, space = item
        own = optimize_instance(space, config)
        standard = ArmOutcome(
            angles=own.angles,
            success_prob=own.value,
            shots_hit=sample_shots(
                space, own.angles, shots, shot_rng(seed, instance_id, STANDARD_ARM)
            ),
        )
        prob = f1_closed(space, shared.angles.beta, shared.angles.gamma)
        noniterative = ArmOutcome(
            angles=shared.angles,
            success_prob=prob,
            shots_hit=sample_shots(
                space, shared.angles, shots, shot_rng(seed, instance_id, NONITERATIVE_ARM)
            ),
        )
        return InstanceComparison(instance_id, standard, noniterative)

    items = [(inst.id, inst.target) for inst in ensemble.instances]
    records = tuple(_thread_map(run_one, items, threads))
    std_probs = np.array([r.standard.success_prob for r in records])
    non_probs = np.array([r.noniterative.success_prob for r in records])
    return ComparisonReport(
        family=ensemble.family,
        n=ensemble.n,
        shots=shots,
        seed=seed,
        shared_angles=shared.angles,
        shared_value=shared.value,
        records=records,
        mean_standard=float(std_probs.mean()),
        std_standard=float(std_probs.std()),
        mean_noniterative=float(non_probs.mean()),
        std_noniterative=float(non_probs.std()),
    )


def run_sat_alpha(
    n: int,
    alphas: tuple[float, ...],
    count: int,
    shots: int,
    seed: int,
    config: OptConfig = OptConfig(),
    threads: int | None = None,
):
    """The two-arm study across SAT clause densities alpha = clauses / n.

    Returns one (alpha, ensemble, report) triple per density, with
    floor(alpha * n) clauses per instance.
    """
    from .problems import build_ensemble

    if not alphas:
        raise UsageError("need at least one alpha")
    results = []
    for alpha in alphas:
        num_clauses = int(alpha * n)
        if num_clauses < 1:
            raise UsageError(f"alpha {alpha} yields no clauses at n={n}")
        ensemble = build_ensemble("sat", n, count, {"num_clauses": num_clauses}, seed)
        report = run_success_comparison(ensemble, shots, seed, config, threads)
        results.append((alpha, ensemble, report))
    return results
