"""Bitstrings, Hamming distances and distance profiles.

Conventions used throughout the package:

* bit i of an integer holds qubit i, so a state's integer value is its
  computational-basis index;
* target spaces are sorted duplicate-free tuples of such integers;
* a distance profile of a reference state k against a target space T is the
  dense length-(n+1) vector whose entry d counts the members of T at Hamming
  distance d from k.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import _kernels

MAX_WIDTH = 32
MAX_STATEVECTOR_WIDTH = 24  # 2^n complex amplitudes must stay in memory
MAX_BINOMIAL_N = 64  # C(64, 32) still fits a signed 64-bit integer


class UsageError(ValueError):
    """The caller violated a documented precondition."""


class ComputationError(RuntimeError):
    """A numeric result left its contract; indicates an internal defect."""


@dataclass(frozen=True)
class BitString:
    """An n-bit string stored as a non-negative integer of known width."""

    value: int
    width: int

    def __post_init__(self) -> None:
        if not 1 <= self.width <= MAX_WIDTH:
            raise UsageError(f"width must be in [1, {MAX_WIDTH}], got {self.width}")
        if not 0 <= self.value < (1 << self.width):
            raise UsageError(f"value {self.value} does not fit {self.width} bits")

    def __str__(self) -> str:
        return format(self.value, f"0{self.width}b")


def hamming_distance(a: BitString, b: BitString) -> int:
    """Number of differing bit positions between two equal-width strings."""
    if a.width != b.width:
        raise UsageError(f"width mismatch: {a.width} != {b.width}")
    return (a.value ^ b.value).bit_count()


def binomial(n: int, d: int) -> int:
    """C(n, d), exactly; zero outside 0 <= d <= n."""
    if not 0 <= n <= MAX_BINOMIAL_N:
        raise UsageError(f"n must be in [0, {MAX_BINOMIAL_N}], got {n}")
    if d < 0 or d > n:
        return 0
    return math.comb(n, d)


def binomial_row(n: int) -> np.ndarray:
    """All C(n, d) for d = 0..n as float64 (exact for n <= 64)."""
    return np.array([binomial(n, d) for d in range(n + 1)], dtype=np.float64)


@dataclass(frozen=True)
class TargetSpace:
    """A non-empty set of n-bit target states."""

    n: int
    states: tuple[int, ...]

    def __post_init__(self) -> None:
        if not 1 <= self.n <= MAX_WIDTH:
            raise UsageError(f"n must be in [1, {MAX_WIDTH}], got {self.n}")
        if not self.states:
            raise UsageError("target space must not be empty")
        limit = 1 << self.n
        prev = -1
        for s in self.states:
            if not isinstance(s, int) or not 0 <= s < limit:
                raise UsageError(f"state {s!r} does not fit {self.n} bits")
            if s <= prev:
                raise UsageError("states must be strictly ascending")
            prev = s

    @classmethod
    def from_iterable(cls, n: int, states) -> "TargetSpace":
        return cls(n, tuple(sorted({int(s) for s in states})))

    def __len__(self) -> int:
        return len(self.states)

    @cached_property
    def states_array(self) -> np.ndarray:
        return np.asarray(self.states, dtype=np.uint64)

    @cached_property
    def profiles(self) -> np.ndarray:
        """(|T|, n+1) matrix; row i is the distance profile of states[i].

        Computed once per target space and reused by every landscape sweep.
        """
        return _kernels.pairwise_profiles(self.states_array, self.n)


def distance_profile(space: TargetSpace, k: BitString) -> np.ndarray:
    """Counts of targets at each Hamming distance 0..n from reference k.

    k need not belong to the space; then counts[0] == 0.
    """
    if k.width != space.n:
        raise UsageError(f"reference width {k.width} != space width {space.n}")
    dist = np.bitwise_count(space.states_array ^ np.uint64(k.value))
    return np.bincount(dist.astype(np.int64), minlength=space.n + 1).astype(np.int64)


@dataclass(frozen=True)
class Angles:
    """A (beta, gamma) pair: mixer angle and phase angle."""

    beta: float
    gamma: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.beta) and math.isfinite(self.gamma)):
            raise UsageError(f"angles must be finite, got {self}")


@dataclass(frozen=True)
class AngleGrid:
    """A rectangular lattice of (beta, gamma) points, endpoints included."""

    beta_min: float
    beta_max: float
    gamma_min: float
    gamma_max: float
    beta_steps: int
    gamma_steps: int

    def __post_init__(self) -> None:
        for name in ("beta_min", "beta_max", "gamma_min", "gamma_max"):
            if not math.isfinite(getattr(self, name)):
                raise UsageError(f"{name} must be finite")
        if self.beta_max < self.beta_min or self.gamma_max < self.gamma_min:
            raise UsageError("grid bounds must satisfy max >= min")
        if self.beta_steps < 1 or self.gamma_steps < 1:
            raise UsageError("grid must have at least one point per axis")

    def betas(self) -> np.ndarray:
        return np.linspace(self.beta_min, self.beta_max, self.beta_steps)

    def gammas(self) -> np.ndarray:
        return np.linspace(self.gamma_min, self.gamma_max, self.gamma_steps)

    def points(self):
        """Lattice points in row-major order (beta outer, gamma inner)."""
        for b in self.betas():
            for g in self.gammas():
                yield Angles(float(b), float(g))


def default_grid(beta_steps: int = 100, gamma_steps: int = 100) -> AngleGrid:
    """Standard plotting window: beta in [0, pi], gamma covering [0, 2*pi)."""
    return AngleGrid(
        0.0,
        math.pi,
        0.0,
        2.0 * math.pi * (gamma_steps - 1) / gamma_steps,
        beta_steps,
        gamma_steps,
    )
