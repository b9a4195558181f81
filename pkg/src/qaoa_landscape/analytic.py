"""Closed-form profile statistics for uniformly drawn target spaces.

When T is a uniform random t-subset of {0,1}^n and k is one of its members,
the remaining t-1 targets are a uniform draw without replacement from the
other 2^n - 1 states.  The count of targets at distance d > 0 from k is then
hypergeometric over the C(n, d) states of that shell, and counts of two
shells are jointly multivariate hypergeometric.  Distance 0 always counts
exactly the reference itself.

Two moment conventions are provided:

* ``paper``: first moments t * C(n, d) / 2^n with the matching covariance
  model (a without-replacement correction factor (2^n - t) / (2^n - 1));
* ``exact_hypergeometric``: the moments of the distribution above, i.e.
  (t - 1) * C(n, d) / (2^n - 1) and the standard multivariate
  hypergeometric covariances.

The two agree as 2^n grows; only the exact mode matches the probability
mass functions' own moments identically.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

from .core import UsageError, binomial, binomial_row
from .structure import StructuralSummary

PAPER_MODE = "paper"
EXACT_MODE = "exact_hypergeometric"
MODES = (PAPER_MODE, EXACT_MODE)


@dataclass(frozen=True)
class UniformModel:
    """Uniform random target spaces of fixed size t_size over n bits."""

    n: int
    t_size: int
    mode: str = PAPER_MODE

    def __post_init__(self) -> None:
        if not 1 <= self.n <= 32:
            raise UsageError(f"n must be in [1, 32], got {self.n}")
        if not 1 <= self.t_size <= (1 << self.n):
            raise UsageError(f"t_size must be in [1, 2^n], got {self.t_size}")
        if self.mode not in MODES:
            raise UsageError(f"mode must be one of {MODES}, got {self.mode!r}")


def _log_choose(a: float, b: float) -> float:
    if b < 0 or b > a:
        return -np.inf
    return float(gammaln(a + 1) - gammaln(b + 1) - gammaln(a - b + 1))


def pmf_single(model: UniformModel, d: int, x: int) -> float:
    """P(count at distance d equals x) for a member reference.

    Log-space hypergeometric over shell size C(n, d), population 2^n - 1,
    t_size - 1 draws; distance 0 is the point mass at 1.
    """
    if not 0 <= d <= model.n:
        raise UsageError(f"need 0 <= d <= n, got d={d}")
    if d == 0:
        return 1.0 if x == 1 else 0.0
    shell = binomial(model.n, d)
    population = (1 << model.n) - 1
    draws = model.t_size - 1
    log_p = (
        _log_choose(shell, x)
        + _log_choose(population - shell, draws - x)
        - _log_choose(population, draws)
    )
    return float(np.exp(log_p))


def pmf_joint(model: UniformModel, d1: int, x1: int, d2: int, x2: int) -> float:
    """P(counts at distances d1 and d2 equal x1 and x2) jointly."""
    if not (0 <= d1 <= model.n and 0 <= d2 <= model.n):
        raise UsageError(f"need 0 <= d <= n, got d1={d1}, d2={d2}")
    if d1 == 0 or d2 == 0:
        # the distance-0 count is the constant 1, independent of everything
        return pmf_single(model, d1, x1) * pmf_single(model, d2, x2)
    if d1 == d2:
        return pmf_single(model, d1, x1) if x1 == x2 else 0.0
    shell1 = binomial(model.n, d1)
    shell2 = binomial(model.n, d2)
    population = (1 << model.n) - 1
    draws = model.t_size - 1
    rest = draws - x1 - x2
    log_p = (
        _log_choose(shell1, x1)
        + _log_choose(shell2, x2)
        + _log_choose(population - shell1 - shell2, rest)
        - _log_choose(population, draws)
    )
    return float(np.exp(log_p))


def expected_profile(model: UniformModel) -> np.ndarray:
    """Expected distance profile of a member reference, length n+1."""
    shells = binomial_row(model.n)
    if model.mode == PAPER_MODE:
        profile = model.t_size * shells / (1 << model.n)
    else:
        profile = (model.t_size - 1) * shells / ((1 << model.n) - 1)
    profile[0] = 1.0
    return profile


def covariance(model: UniformModel, d1: int, d2: int) -> float:
    """Covariance of the counts at distances d1 and d2."""
    if not (0 <= d1 <= model.n and 0 <= d2 <= model.n):
        raise UsageError(f"need 0 <= d <= n, got d1={d1}, d2={d2}")
    if d1 == 0 or d2 == 0:
        return 0.0
    size = 1 << model.n
    t = model.t_size
    if model.mode == PAPER_MODE:
        correction = t * (size - t) / (size - 1)
        p1 = binomial(model.n, d1) / size
        if d1 == d2:
            return correction * p1 * (1.0 - p1)
        return -correction * p1 * binomial(model.n, d2) / size
    population = size - 1
    draws = t - 1
    if population == 1:
        return 0.0
    correction = draws * (population - draws) / (population - 1)
    p1 = binomial(model.n, d1) / population
    if d1 == d2:
        return correction * p1 * (1.0 - p1)
    return -correction * p1 * binomial(model.n, d2) / population


def summary_analytic(model: UniformModel) -> StructuralSummary:
    """Structural summary predicted by the model (no sampling involved)."""
    profile = expected_profile(model)
    width = model.n + 1
    pair = np.outer(profile, profile)
    for d1 in range(width):
        for d2 in range(width):
            pair[d1, d2] += covariance(model, d1, d2)
    return StructuralSummary(
        n=model.n,
        count=0,
        e_tsize=float(model.t_size),
        var_tsize=0.0,
        e_profile=profile,
        e_pair=pair,
        mode=model.mode,
    )
