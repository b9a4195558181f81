import math
from itertools import combinations

import numpy as np
import pytest

from qaoa_landscape.core import UsageError
from qaoa_landscape.problems import (
    Cnf,
    Graph,
    build_ensemble,
    enumerate_kcliques,
    enumerate_sat,
    from_dimacs,
    gen_graph,
    gen_sat,
    instance_rng,
    primes_below,
    random_walk,
    sample_clustered,
    sample_qr,
    sample_uniform,
    to_dimacs,
)


class TestUniform:
    def test_size_and_range(self, rng):
        space = sample_uniform(6, 20, rng)
        assert len(space) == 20
        assert all(0 <= s < 64 for s in space.states)

    def test_full_space(self, rng):
        space = sample_uniform(3, 8, rng)
        assert space.states == tuple(range(8))

    def test_validation(self, rng):
        with pytest.raises(UsageError):
            sample_uniform(3, 0, rng)
        with pytest.raises(UsageError):
            sample_uniform(3, 9, rng)

    def test_subsets_uniform(self):
        # every 2-subset of 16 states equally likely, 4 sigma per subset
        rng = np.random.default_rng(2024)
        counts = {frozenset(c): 0 for c in combinations(range(16), 2)}
        draws = 100_000
        for _ in range(draws):
            counts[frozenset(sample_uniform(4, 2, rng).states)] += 1
        expected = draws / len(counts)
        sigma = math.sqrt(draws * (1 / len(counts)) * (1 - 1 / len(counts)))
        worst = max(abs(c - expected) for c in counts.values())
        assert worst < 4 * sigma


class TestClustered:
    def test_exact_size_with_retry(self, rng):
        space = sample_clustered(8, 3, 30, rng)
        assert len(space) == 3 * 31

    def test_drop_mode_never_exceeds_plan(self, rng):
        for _ in range(10):
            space = sample_clustered(5, 2, 6, rng, dedupe="drop")
            assert len(space) <= 2 * 7

    def test_capacity_checked(self, rng):
        with pytest.raises(UsageError):
            sample_clustered(3, 3, 3, rng)  # 12 states > 2^3

    def test_dedupe_validated(self, rng):
        with pytest.raises(UsageError):
            sample_clustered(5, 1, 1, rng, dedupe="maybe")

    def test_walk_length_geometric(self):
        # flips per walk are geometric with continue probability 1/2, mean 1
        rng = np.random.default_rng(7)
        flips = np.array([random_walk(0, 6, rng)[1] for _ in range(100_000)])
        standard_error = flips.std(ddof=1) / math.sqrt(flips.size)
        assert abs(flips.mean() - 1.0) < 4 * standard_error

    def test_walk_stays_in_range(self, rng):
        for _ in range(200):
            state, _ = random_walk(int(rng.integers(16)), 4, rng)
            assert 0 <= state < 16


class TestSat:
    def test_clause_shape(self, rng):
        cnf = gen_sat(8, 10, rng)
        assert cnf.num_vars == 8
        assert len(cnf.clauses) == 10
        for clause in cnf.clauses:
            variables = [v for v, _ in clause]
            assert len(set(variables)) == 3

    def test_needs_three_vars(self, rng):
        with pytest.raises(UsageError):
            gen_sat(2, 1, rng)

    def test_single_clause_excludes_one_state(self):
        cnf = Cnf(num_vars=3, clauses=(((0, False), (1, False), (2, False)),))
        space = enumerate_sat(cnf)
        assert len(space) == 7
        assert 0 not in space.states  # all-false is the only falsifying assignment

    def test_contradiction_is_none(self):
        cnf = Cnf(num_vars=3, clauses=(((0, False),), ((0, True),)))
        assert enumerate_sat(cnf) is None

    def test_against_slow_evaluation(self, rng):
        cnf = gen_sat(6, 9, rng)

        def satisfied(assignment: int) -> bool:
            for clause in cnf.clauses:
                if not any(
                    ((assignment >> var) & 1) == (0 if neg else 1) for var, neg in clause
                ):
                    return False
            return True

        want = [z for z in range(64) if satisfied(z)]
        space = enumerate_sat(cnf)
        got = [] if space is None else list(space.states)
        assert got == want

    def test_width_capped(self):
        cnf = Cnf(num_vars=25, clauses=(((0, False), (1, False), (2, False)),))
        with pytest.raises(UsageError):
            enumerate_sat(cnf)


class TestDimacs:
    def test_header_and_terminators(self, rng):
        cnf = gen_sat(5, 4, rng)
        text = to_dimacs(cnf)
        lines = text.strip().split("\n")
        assert lines[0] == "p cnf 5 4"
        assert all(line.endswith(" 0") for line in lines[1:])

    def test_round_trip(self, rng):
        cnf = gen_sat(7, 12, rng)
        assert from_dimacs(to_dimacs(cnf)) == cnf
        assert to_dimacs(from_dimacs(to_dimacs(cnf))) == to_dimacs(cnf)

    def test_comments_skipped(self):
        text = "c a comment\np cnf 2 1\nc another\n1 -2 0\n"
        cnf = from_dimacs(text)
        assert cnf.clauses == (((0, False), (1, True)),)

    def test_malformed_rejected(self):
        with pytest.raises(UsageError):
            from_dimacs("1 2 0\n")  # clause before header
        with pytest.raises(UsageError):
            from_dimacs("p cnf 2 1\n1 2\n")  # unterminated clause
        with pytest.raises(UsageError):
            from_dimacs("p cnf 2 1\n1 3 0\n")  # literal out of range
        with pytest.raises(UsageError):
            from_dimacs("p cnf 2 2\n1 2 0\n")  # clause count mismatch
        with pytest.raises(UsageError):
            from_dimacs("")


class TestKClique:
    def test_triangle_with_isolated_vertex(self):
        graph = Graph(n=4, edges=((0, 1), (0, 2), (1, 2)))
        space = enumerate_kcliques(graph, 3)
        assert space.states == (0b0111,)

    def test_no_clique_is_none(self):
        graph = Graph(n=4, edges=((0, 1), (2, 3)))
        assert enumerate_kcliques(graph, 3) is None

    def test_complete_graph_counts(self):
        edges = tuple(combinations(range(5), 2))
        space = enumerate_kcliques(Graph(n=5, edges=edges), 3)
        assert len(space) == math.comb(5, 3)
        # every mask has exactly k bits set
        assert all(s.bit_count() == 3 for s in space.states)

    def test_k_validated(self):
        graph = Graph(n=3, edges=())
        with pytest.raises(UsageError):
            enumerate_kcliques(graph, 0)
        with pytest.raises(UsageError):
            enumerate_kcliques(graph, 4)

    def test_gen_graph_extremes(self, rng):
        assert gen_graph(6, 0.0, rng).edges == ()
        assert len(gen_graph(6, 1.0, rng).edges) == 15
        with pytest.raises(UsageError):
            gen_graph(6, 1.5, rng)


class TestQrFactor:
    def test_prime_pool(self):
        assert primes_below(8) == (2, 3, 5, 7)
        assert primes_below(100) == (
            2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43,
            47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
        )
        assert primes_below(2) == ()

    def test_known_pair_layout(self):
        # q=3, r=5 at n=6: 011|101 and 101|011
        class FixedRng:
            def integers(self, *_args, **_kwargs):
                return np.array([1, 2])  # indices of 3 and 5 in (2, 3, 5, 7)

        space, meta = sample_qr(6, FixedRng())
        assert space.states == (0b011101, 0b101011)
        assert meta == {"q": 3, "r": 5, "x": 15}

    def test_always_two_targets(self, rng):
        for _ in range(50):
            space, meta = sample_qr(8, rng)
            assert len(space) == 2
            assert meta["q"] != meta["r"]
            assert meta["x"] == meta["q"] * meta["r"]

    def test_validation(self, rng):
        with pytest.raises(UsageError):
            sample_qr(7, rng)
        with pytest.raises(UsageError):
            sample_qr(4, rng)


class TestEnsembles:
    def test_ids_sequential(self):
        ensemble = build_ensemble("uniform", 5, 7, {"t_size": 4}, seed=1)
        assert [inst.id for inst in ensemble.instances] == list(range(7))

    def test_rebuild_identical(self):
        a = build_ensemble("sat", 5, 5, {"num_clauses": 10}, seed=3)
        b = build_ensemble("sat", 5, 5, {"num_clauses": 10}, seed=3)
        for x, y in zip(a.instances, b.instances):
            assert x.target.states == y.target.states
            assert x.meta == y.meta

    def test_instances_independent_of_count(self):
        # stream is keyed by (seed, id): growing the ensemble keeps a prefix
        small = build_ensemble("uniform", 6, 3, {"t_size": 8}, seed=4)
        large = build_ensemble("uniform", 6, 9, {"t_size": 8}, seed=4)
        for x, y in zip(small.instances, large.instances):
            assert x.target.states == y.target.states

    def test_seed_changes_output(self):
        a = build_ensemble("uniform", 6, 3, {"t_size": 8}, seed=4)
        b = build_ensemble("uniform", 6, 3, {"t_size": 8}, seed=5)
        assert any(x.target.states != y.target.states for x, y in zip(a.instances, b.instances))

    def test_sat_meta_round_trips(self):
        ensemble = build_ensemble("sat", 5, 3, {"num_clauses": 8}, seed=6)
        for inst in ensemble.instances:
            cnf = from_dimacs(inst.meta["dimacs"])
            space = enumerate_sat(cnf)
            assert space is not None and space.states == inst.target.states

    def test_kclique_masks_match_meta(self):
        ensemble = build_ensemble("kclique", 6, 3, {}, seed=7)
        for inst in ensemble.instances:
            graph = Graph(n=6, edges=tuple(tuple(e) for e in inst.meta["edges"]))
            space = enumerate_kcliques(graph, inst.meta["k"])
            assert space.states == inst.target.states

    def test_defaults_recorded(self):
        ensemble = build_ensemble("clustered", 8, 1, {}, seed=8)
        assert ensemble.params == {"num_seeds": 3, "per_seed": 30, "dedupe": "retry"}
        assert len(ensemble.instances[0].target) == 93

    def test_unknown_family_and_params(self):
        with pytest.raises(UsageError):
            build_ensemble("mystery", 5, 1, {}, seed=0)
        with pytest.raises(UsageError):
            build_ensemble("uniform", 5, 1, {"t_size": 4, "k": 2}, seed=0)
        with pytest.raises(UsageError):
            build_ensemble("uniform", 5, 1, {}, seed=0)  # t_size required
        with pytest.raises(UsageError):
            build_ensemble("uniform", 5, 0, {"t_size": 4}, seed=0)

    def test_instance_rng_streams_differ(self):
        a = instance_rng(1, 0).random(4)
        b = instance_rng(1, 1).random(4)
        assert not np.allclose(a, b)
