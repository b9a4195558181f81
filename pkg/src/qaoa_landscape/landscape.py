"""Depth-1 QAOA landscapes over (beta, gamma).

The circuit prepares the uniform superposition, multiplies every target
amplitude by exp(-i*gamma) (the cost operator is the projector onto the
target set) and applies the transverse-field mixer exp(-i*beta*X).  The
success probability F1(beta, gamma) of measuring a target admits a closed
form in which each target k contributes through its distance profile only:

    amplitude_factor(d) = cos(beta)^(n-d) * (-i*sin(beta))^d
    c_k = sum_d (profile_k[d] * (exp(-i*gamma) - 1) + C(n, d)) * amplitude_factor(d)
    F1  = 2^-n * sum_{k in T} |c_k|^2
        = (|T| / 2^n) * mean_k |c_k|^2

Averaging |c_k|^2 over an ensemble keeps the expression linear in the
profile statistics, which yields the structural approximation evaluated by
``approx_expected_f1``: a quadratic form in the amplitude factors whose
weight matrix depends only on gamma and the expected profile moments.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .core import (
    MAX_STATEVECTOR_WIDTH,
    AngleGrid,
    ComputationError,
    TargetSpace,
    UsageError,
    binomial_row,
)
from .structure import StructuralSummary

# |imag| above this (scaled) threshold in a real-by-construction result
# signals a defect rather than rounding noise
IMAG_RESIDUE_TOL = 1e-9


def f_n(beta: float, d: int, n: int) -> complex:
    """cos(beta)^(n-d) * (-i*sin(beta))^d, by repeated multiplication."""
    if not 0 <= d <= n:
        raise UsageError(f"need 0 <= d <= n, got d={d}, n={n}")
    c = math.cos(beta)
    s = -1j * math.sin(beta)
    out = complex(1.0)
    for _ in range(n - d):
        out *= c
    for _ in range(d):
        out *= s
    return out


def fn_vector(beta: float, n: int) -> np.ndarray:
    """All f_n(beta, d, n) for d = 0..n, as one complex vector."""
    c = math.cos(beta)
    s = -1j * math.sin(beta)
    cos_pow = np.empty(n + 1, dtype=np.complex128)
    sin_pow = np.empty(n + 1, dtype=np.complex128)
    cos_pow[0] = 1.0
    sin_pow[0] = 1.0
    for i in range(1, n + 1):
        cos_pow[i] = cos_pow[i - 1] * c
        sin_pow[i] = sin_pow[i - 1] * s
    return cos_pow[::-1] * sin_pow


def c_k(beta: float, gamma: float, profile: np.ndarray, n: int) -> complex:
    """Unnormalised target amplitude of a state with the given profile."""
    if profile.shape != (n + 1,):
        raise UsageError(f"profile must have length n+1 = {n + 1}")
    fn = fn_vector(beta, n)
    phase = cmath.exp(-1j * gamma) - 1.0
    return complex(phase * (profile @ fn) + binomial_row(n) @ fn)


def _ck_matrix(space: TargetSpace, fn: np.ndarray, gamma: float) -> np.ndarray:
    phase = cmath.exp(-1j * gamma) - 1.0
    return phase * (space.profiles @ fn) + binomial_row(space.n) @ fn


def f1_closed(space: TargetSpace, beta: float, gamma: float) -> float:
    """Success probability of the depth-1 circuit, via distance profiles."""
    ck = _ck_matrix(space, fn_vector(beta, space.n), gamma)
    return float(np.abs(ck) @ np.abs(ck)) / (1 << space.n)


def mean_ck_squared(space: TargetSpace, beta: float, gamma: float) -> float:
    """mean_k |c_k|^2 over the targets; F1 scaled by 2^n / |T|."""
    ck = _ck_matrix(space, fn_vector(beta, space.n), gamma)
    return float(np.abs(ck) @ np.abs(ck)) / len(space)


def f1_closed_curve(space: TargetSpace, betas: np.ndarray, gamma: float) -> np.ndarray:
    """F1 along a beta sweep at fixed gamma."""
    fn_cols = np.column_stack([fn_vector(float(b), space.n) for b in betas])
    proj = space.profiles @ fn_cols  # (|T|, B)
    base = binomial_row(space.n) @ fn_cols  # (B,)
    ck = (cmath.exp(-1j * gamma) - 1.0) * proj + base
    return np.einsum("kb,kb->b", ck, ck.conj()).real / (1 << space.n)


def f1_closed_grid(space: TargetSpace, grid: AngleGrid) -> np.ndarray:
    """F1 on a lattice, flattened row-major (beta outer, gamma inner)."""
    betas = grid.betas()
    fn_cols = np.column_stack([fn_vector(float(b), space.n) for b in betas])
    proj = space.profiles @ fn_cols
    base = binomial_row(space.n) @ fn_cols
    out = np.empty((len(betas), grid.gamma_steps))
    for j, g in enumerate(grid.gammas()):
        ck = (cmath.exp(-1j * float(g)) - 1.0) * proj + base
        out[:, j] = np.einsum("kb,kb->b", ck, ck.conj()).real
    return out.ravel() / (1 << space.n)


def qaoa_state(space: TargetSpace, beta: float, gamma: float) -> np.ndarray:
    """Full 2^n statevector after the depth-1 circuit."""
    n = space.n
    if n > MAX_STATEVECTOR_WIDTH:
        raise UsageError(f"statevector needs n <= {MAX_STATEVECTOR_WIDTH}, got {n}")
    amps = np.full(1 << n, 1.0 / math.sqrt(1 << n), dtype=np.complex128)
    idx = space.states_array.astype(np.int64)
    amps[idx] *= cmath.exp(-1j * gamma)
    _kernels.apply_mixer(amps, beta, n)
    return amps


def f1_statevector(space: TargetSpace, beta: float, gamma: float) -> float:
    """Success probability by direct statevector simulation (oracle route)."""
    amps = qaoa_state(space, beta, gamma)
    hit = amps[space.states_array.astype(np.int64)]
    return float(np.abs(hit) @ np.abs(hit))


def w_matrix(gamma: float, summary: StructuralSummary) -> np.ndarray:
    """Gamma-dependent weight matrix of the structural approximation.

    Entry (d1, d2) collects the expected profile moments so that
    mean |c_k|^2 = sum_{d1,d2} w[d1,d2] * f_n(d1) * conj(f_n(d2)).
    """
    n = summary.n
    phase = cmath.exp(-1j * gamma) - 1.0
    brow = binomial_row(n)
    w = summary.e_pair * (phase * phase.conjugate()).real
    w = w.astype(np.complex128)
    w += phase * np.outer(summary.e_profile, brow)
    w += phase.conjugate() * np.outer(brow, summary.e_profile)
    w += np.outer(brow, brow)
    return w


def _real_part(value: complex, where: str) -> float:
    if abs(value.imag) > IMAG_RESIDUE_TOL * (1.0 + abs(value.real)):
        raise ComputationError(f"imaginary residue {value.imag:g} in {where}")
    return value.real


def approx_expected_f1(summary: StructuralSummary, beta: float, gamma: float) -> float:
    """Expected F1 from structure alone: (E|T|/2^n) * E(mean |c_k|^2)."""
    fn = fn_vector(beta, summary.n)
    quad = fn @ w_matrix(gamma, summary) @ fn.conj()
    scale = summary.e_tsize / (1 << summary.n)
    return scale * _real_part(complex(quad), "approx_expected_f1")


def approx_grid(summary: StructuralSummary, grid: AngleGrid) -> np.ndarray:
    """approx_expected_f1 on a lattice, flattened row-major."""
    betas = grid.betas()
    fn_cols = np.column_stack([fn_vector(float(b), summary.n) for b in betas])
    scale = summary.e_tsize / (1 << summary.n)
    out = np.empty((len(betas), grid.gamma_steps))
    for j, g in enumerate(grid.gammas()):
        w = w_matrix(float(g), summary)
        quad = np.einsum("db,de,eb->b", fn_cols, w, fn_cols.conj())
        bad = np.abs(quad.imag) > IMAG_RESIDUE_TOL * (1.0 + np.abs(quad.real))
        if bad.any():
            raise ComputationError(
                f"imaginary residue in approx grid at gamma={float(g):g}"
            )
        out[:, j] = scale * quad.real
    return out.ravel()


def approx_curve(summary: StructuralSummary, betas: np.ndarray, gamma: float) -> np.ndarray:
    """approx_expected_f1 along a beta sweep at fixed gamma."""
    fn_cols = np.column_stack([fn_vector(float(b), summary.n) for b in betas])
    w = w_matrix(gamma, summary)
    quad = np.einsum("db,de,eb->b", fn_cols, w, fn_cols.conj())
    bad = np.abs(quad.imag) > IMAG_RESIDUE_TOL * (1.0 + np.abs(quad.real))
    if bad.any():
        raise ComputationError(f"imaginary residue in approx curve at gamma={gamma:g}")
    return summary.e_tsize / (1 << summary.n) * quad.real


def error_bound(scaled_sizes: np.ndarray, mean_ck_values: np.ndarray) -> float:
    """Cauchy-Schwarz bound on |mean F1 - approx|.

    Takes the per-instance scaled sizes |T_i|/2^n and the per-instance
    mean |c_k|^2 values at one angle pair; the bound is the square root of
    the product of their population variances, and the actual deviation is
    exactly their sample covariance.
    """
    s = np.asarray(scaled_sizes, dtype=np.float64)
    m = np.asarray(mean_ck_values, dtype=np.float64)
    if s.shape != m.shape or s.ndim != 1 or s.size == 0:
        raise UsageError("need two equal-length non-empty 1-d arrays")
    return float(math.sqrt(s.var() * m.var()))


@dataclass(frozen=True, eq=False)
class LandscapeGrid:
    """Values (and optionally spreads) on an angle lattice, row-major."""

    grid: AngleGrid
    values: np.ndarray
    stddev: np.ndarray | None = None

    def __post_init__(self) -> None:
        expected = self.grid.beta_steps * self.grid.gamma_steps
        if self.values.shape != (expected,):
            raise UsageError(f"values must have shape ({expected},)")
        if not np.isfinite(self.values).all():
            raise UsageError("values must be finite")
        if self.stddev is not None and self.stddev.shape != (expected,):
            raise UsageError(f"stddev must have shape ({expected},)")


def eval_grid(evaluator, grid: AngleGrid) -> LandscapeGrid:
    """Evaluate a scalar point function on every lattice point."""
    values = np.empty(grid.beta_steps * grid.gamma_steps)
    i = 0
    for b in grid.betas():
        for g in grid.gammas():
            try:
                values[i] = evaluator(float(b), float(g))
            except (UsageError, ComputationError):
                raise
            except Exception as exc:  # attach the failing coordinates
                raise ComputationError(
                    f"evaluator failed at beta={float(b):g}, gamma={float(g):g}: {exc}"
                ) from exc
            i += 1
    return LandscapeGrid(grid=grid, values=values)
