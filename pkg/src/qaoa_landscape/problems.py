"""Problem ensembles: target-space generators for five families.

Every instance of an ensemble owns an independent RNG stream derived from
(ensemble seed, instance id), so instances are reproducible in isolation and
rejection resampling inside one instance never shifts its neighbours.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

import numpy as np

from .core import MAX_STATEVECTOR_WIDTH, MAX_WIDTH, ComputationError, TargetSpace, UsageError

FAMILIES = ("uniform", "clustered", "sat", "kclique", "qrfactor")

_WALK_RETRY_CAP = 1_000_000


def instance_rng(seed: int, instance_id: int) -> np.random.Generator:
    """The RNG stream owned by one instance of one ensemble."""
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(instance_id,)))


# ---------------------------------------------------------------------------
# direct samplers


def sample_uniform(n: int, t_size: int, rng: np.random.Generator) -> TargetSpace:
    """A uniform random t_size-subset of all n-bit states."""
    if not 1 <= n <= MAX_WIDTH:
        raise UsageError(f"n must be in [1, {MAX_WIDTH}], got {n}")
    if not 1 <= t_size <= (1 << n):
        raise UsageError(f"t_size must be in [1, 2^n], got {t_size}")
    states = rng.choice(1 << n, size=t_size, replace=False)
    return TargetSpace.from_iterable(n, states)


def random_walk(start: int, n: int, rng: np.random.Generator) -> tuple[int, int]:
    """Flip one uniformly chosen bit per step, continuing with probability 1/2.

    Returns (final state, number of flips); the flip count is geometric with
    mean 1.
    """
    state = start
    flips = 0
    while rng.random() < 0.5:
        state ^= 1 << int(rng.integers(n))
        flips += 1
    return state, flips


def sample_clustered(
    n: int,
    num_seeds: int,
    per_seed: int,
    rng: np.random.Generator,
    dedupe: str = "retry",
) -> TargetSpace:
    """Clusters grown by random walks around uniformly drawn seed states.

    Each seed contributes per_seed states reached by independent walks from
    it.  With dedupe="retry" a walk that lands on an already-collected state
    is rerun, so |T| = num_seeds * (per_seed + 1) exactly; with
    dedupe="drop" such walks are discarded and |T| may come out smaller.
    """
    if dedupe not in ("retry", "drop"):
        raise UsageError(f"dedupe must be 'retry' or 'drop', got {dedupe!r}")
    if num_seeds < 1 or per_seed < 0:
        raise UsageError("need num_seeds >= 1 and per_seed >= 0")
    planned = num_seeds * (per_seed + 1)
    if planned > (1 << n):
        raise UsageError(f"{planned} states do not fit {1 << n} available")
    seeds = rng.choice(1 << n, size=num_seeds, replace=False)
    collected = {int(s) for s in seeds}
    for seed in seeds:
        for _ in range(per_seed):
            for _ in range(_WALK_RETRY_CAP):
                state, _flips = random_walk(int(seed), n, rng)
                if state not in collected:
                    collected.add(state)
                    break
                if dedupe == "drop":
                    break
            else:
                raise ComputationError("random walk failed to find a new state")
    return TargetSpace.from_iterable(n, collected)


# ---------------------------------------------------------------------------
# satisfiability


@dataclass(frozen=True)
class Cnf:
    """A conjunction of 3-literal clauses; literal = (0-based var, negated)."""

    num_vars: int
    clauses: tuple[tuple[tuple[int, bool], ...], ...]


def gen_sat(n: int, num_clauses: int, rng: np.random.Generator) -> Cnf:
    """Random 3-SAT: three distinct variables per clause, fair negation."""
    if n < 3:
        raise UsageError(f"3-SAT needs n >= 3, got {n}")
    if num_clauses < 1:
        raise UsageError("need at least one clause")
    clauses = []
    for _ in range(num_clauses):
        variables = rng.choice(n, size=3, replace=False)
        negated = rng.random(3) < 0.5
        clauses.append(tuple((int(v), bool(neg)) for v, neg in zip(variables, negated)))
    return Cnf(num_vars=n, clauses=tuple(clauses))


def enumerate_sat(cnf: Cnf) -> TargetSpace | None:
    """All satisfying assignments by exhaustive scan; None if unsatisfiable.

    Assignment bit i is variable i.  Bounded to n <= 24.
    """
    n = cnf.num_vars
    if n > MAX_STATEVECTOR_WIDTH:
        raise UsageError(f"exhaustive SAT scan needs n <= {MAX_STATEVECTOR_WIDTH}")
    states = np.arange(1 << n, dtype=np.uint32)
    ok = np.ones(states.shape, dtype=bool)
    for clause in cnf.clauses:
        sat = np.zeros(states.shape, dtype=bool)
        for var, negated in clause:
            bit = (states >> np.uint32(var)) & np.uint32(1)
            sat |= (bit == 0) if negated else (bit == 1)
        ok &= sat
    hits = np.nonzero(ok)[0]
    if hits.size == 0:
        return None
    return TargetSpace.from_iterable(n, hits)


def to_dimacs(cnf: Cnf) -> str:
    """DIMACS CNF text: 1-based signed literals, zero-terminated clauses."""
    lines = [f"p cnf {cnf.num_vars} {len(cnf.clauses)}"]
    for clause in cnf.clauses:
        literals = [-(var + 1) if negated else var + 1 for var, negated in clause]
        lines.append(" ".join(str(lit) for lit in literals) + " 0")
    return "\n".join(lines) + "\n"


def from_dimacs(text: str) -> Cnf:
    """Parse DIMACS CNF; comment lines ('c ...') are skipped."""
    num_vars = None
    num_clauses = None
    clauses: list[tuple[tuple[int, bool], ...]] = []
    pending: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            fields = line.split()
            if len(fields) != 4 or fields[1] != "cnf":
                raise UsageError(f"line {lineno}: malformed problem line {line!r}")
            num_vars, num_clauses = int(fields[2]), int(fields[3])
            continue
        if num_vars is None:
            raise UsageError(f"line {lineno}: clause before 'p cnf' header")
        for token in line.split():
            lit = int(token)
            if lit == 0:
                clauses.append(tuple((abs(v) - 1, v < 0) for v in pending))
                pending = []
            else:
                if abs(lit) > num_vars:
                    raise UsageError(f"line {lineno}: literal {lit} out of range")
                pending.append(lit)
    if pending:
        raise UsageError("unterminated clause at end of input")
    if num_vars is None:
        raise UsageError("missing 'p cnf' header")
    if num_clauses is not None and len(clauses) != num_clauses:
        raise UsageError(f"header promises {num_clauses} clauses, found {len(clauses)}")
    return Cnf(num_vars=num_vars, clauses=tuple(clauses))


# ---------------------------------------------------------------------------
# k-clique


@dataclass(frozen=True)
class Graph:
    """Undirected graph on vertices 0..n-1; edges as sorted (i, j) pairs."""

    n: int
    edges: tuple[tuple[int, int], ...]


def gen_graph(n: int, edge_prob: float, rng: np.random.Generator) -> Graph:
    """A random graph: each of the C(n, 2) edges present independently."""
    if n < 2:
        raise UsageError(f"graph generation needs n >= 2, got {n}")
    if not 0.0 <= edge_prob <= 1.0:
        raise UsageError(f"edge_prob must be in [0, 1], got {edge_prob}")
    pairs = list(combinations(range(n), 2))
    keep = rng.random(len(pairs)) < edge_prob
    return Graph(n=n, edges=tuple(p for p, k in zip(pairs, keep) if k))


def enumerate_kcliques(graph: Graph, k: int) -> TargetSpace | None:
    """Vertex-mask bitstrings of all k-cliques; None if the graph has none."""
    if not 1 <= k <= graph.n:
        raise UsageError(f"need 1 <= k <= n, got k={k}")
    adjacency = [0] * graph.n
    for i, j in graph.edges:
        adjacency[i] |= 1 << j
        adjacency[j] |= 1 << i
    masks = []
    for combo in combinations(range(graph.n), k):
        if all(adjacency[i] >> j & 1 for i, j in combinations(combo, 2)):
            mask = 0
            for v in combo:
                mask |= 1 << v
            masks.append(mask)
    if not masks:
        return None
    return TargetSpace.from_iterable(graph.n, masks)


# ---------------------------------------------------------------------------
# factoring


@lru_cache(maxsize=None)
def primes_below(limit: int) -> tuple[int, ...]:
    """All primes < limit by a sieve of Eratosthenes."""
    if limit <= 2:
        return ()
    sieve = np.ones(limit, dtype=bool)
    sieve[:2] = False
    for p in range(2, math.isqrt(limit - 1) + 1):
        if sieve[p]:
            sieve[p * p :: p] = False
    return tuple(int(p) for p in np.nonzero(sieve)[0])


def sample_qr(n: int, rng: np.random.Generator) -> tuple[TargetSpace, dict]:
    """A semiprime factoring target: both orderings of two distinct primes.

    q and r are drawn uniformly from the primes below 2^(n/2); the two
    targets are the n-bit concatenations q|r and r|q (each factor padded to
    n/2 bits), and the metadata records the product x = q * r.
    """
    if n < 6 or n % 2:
        raise UsageError(f"qrfactor needs even n >= 6, got {n}")
    half = n // 2
    pool = primes_below(1 << half)
    while True:
        q, r = (int(pool[i]) for i in rng.integers(len(pool), size=2))
        if q != r:
            break
    targets = {(q << half) | r, (r << half) | q}
    return TargetSpace.from_iterable(n, targets), {"q": q, "r": r, "x": q * r}


# ---------------------------------------------------------------------------
# ensembles


@dataclass(frozen=True, eq=False)
class Instance:
    """One generated target space plus its family-specific metadata."""

    id: int
    target: TargetSpace
    meta: dict | None = None


@dataclass(frozen=True, eq=False)
class Ensemble:
    family: str
    n: int
    seed: int
    params: dict
    instances: tuple[Instance, ...]


_FAMILY_PARAMS = {
    "uniform": {"t_size": None},
    "clustered": {"num_seeds": 3, "per_seed": 30, "dedupe": "retry"},
    "sat": {"num_clauses": None},
    "kclique": {"k": 3, "edge_prob": 0.5},
    "qrfactor": {},
}


def _resolve_params(family: str, params: dict) -> dict:
    spec = _FAMILY_PARAMS[family]
    unknown = set(params) - set(spec)
    if unknown:
        raise UsageError(f"unknown params for family {family!r}: {sorted(unknown)}")
    resolved = {}
    for key, default in spec.items():
        value = params.get(key, default)
        if value is None:
            raise UsageError(f"family {family!r} requires param {key!r}")
        resolved[key] = value
    return resolved


def _build_instance(family: str, n: int, params: dict, rng) -> tuple[TargetSpace, dict | None]:
    if family == "uniform":
        return sample_uniform(n, params["t_size"], rng), None
    if family == "clustered":
        space = sample_clustered(n, params["num_seeds"], params["per_seed"], rng, params["dedupe"])
        return space, None
    if family == "sat":
        while True:  # regenerate until satisfiable
            cnf = gen_sat(n, params["num_clauses"], rng)
            space = enumerate_sat(cnf)
            if space is not None:
                return space, {"dimacs": to_dimacs(cnf)}
    if family == "kclique":
        while True:  # regenerate until some k-clique exists
            graph = gen_graph(n, params["edge_prob"], rng)
            space = enumerate_kcliques(graph, params["k"])
            if space is not None:
                return space, {"k": params["k"], "edges": [list(e) for e in graph.edges]}
    if family == "qrfactor":
        return sample_qr(n, rng)
    raise UsageError(f"unknown family {family!r}; expected one of {FAMILIES}")


def build_ensemble(family: str, n: int, count: int, params: dict, seed: int) -> Ensemble:
    """Generate a reproducible ensemble of target-space instances."""
    if family not in FAMILIES:
        raise UsageError(f"unknown family {family!r}; expected one of {FAMILIES}")
    if count < 1:
        raise UsageError(f"count must be >= 1, got {count}")
    resolved = _resolve_params(family, params)
    instances = []
    for instance_id in range(count):
        rng = instance_rng(seed, instance_id)
        space, meta = _build_instance(family, n, resolved, rng)
        instances.append(Instance(id=instance_id, target=space, meta=meta))
    return Ensemble(family=family, n=n, seed=seed, params=resolved, instances=tuple(instances))
