"""Path analysis: probabilities, best paths vs. enumeration, census behavior."""

import math

import numpy as np
import pytest

from podsim.contagion import (
    DCC,
    ComplexContagion,
    LinearCognitive,
    SimpleContagion,
    ThresholdCognitive,
    UnsupportedModelError,
    contagion_prob,
)
from podsim.graphs import GraphSpec, SocialGraph
from podsim.paths import (
    INSTITUTION,
    TransmissionPath,
    believing_neighbors,
    disjoint_paths_greedy,
    max_probability_path,
    path_census,
    path_probability,
    tau_path_exists,
)

BETA1 = 1.0 / (1.0 + math.exp(-4.0))  # stubborn sigmoid at distance 1


def make_path(beliefs, msg_level):
    nodes = (INSTITUTION,) + tuple(range(len(beliefs)))
    return TransmissionPath(nodes, (msg_level,) + tuple(beliefs))


def best_prob_by_enumeration(graph, subscribers, target, msg_level, model, excluded=()):
    """Exhaustive max path probability over simple subscriber-to-target paths."""
    adopt = [contagion_prob(model, int(b), msg_level) for b in graph.beliefs]
    ex = set(excluded)
    best = [None]

    def dfs(v, visited, prob):
        if v == target:
            if best[0] is None or prob > best[0]:
                best[0] = prob
            return
        for w in graph.adj[v]:
            if w in visited or w in ex or adopt[w] <= 0.0:
                continue
            dfs(w, visited | {w}, prob * adopt[w])

    for s in set(subscribers):
        if s in ex or adopt[s] <= 0.0:
            continue
        dfs(s, {s}, adopt[s])
    return best[0]


def random_micrograph(rng):
    n = int(rng.integers(2, 9))
    density = rng.uniform(0.25, 0.85)
    edges = [
        (u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < density
    ]
    beliefs = rng.integers(0, 7, n)
    return SocialGraph(beliefs, edges)


class TestTransmissionPath:
    def test_must_start_at_institution(self):
        with pytest.raises(ValueError):
            TransmissionPath((0, 1), (6, 6))

    def test_rejects_repeated_nodes(self):
        with pytest.raises(ValueError):
            TransmissionPath((INSTITUTION, 0, 1, 0), (6, 6, 6, 6))


class TestPathProbability:
    def test_flat_probability_squares(self):
        assert path_probability(make_path([2, 4], 6), 6, SimpleContagion(0.15)) == pytest.approx(0.0225)

    def test_close_belief_chain_stays_high(self):
        p = path_probability(make_path([6, 5, 6], 6), 6, DCC)
        assert p >= 0.947

    def test_one_distant_node_collapses_chain(self):
        for beliefs in ([6, 3, 6], [2, 6, 6], [6, 6, 1]):
            assert path_probability(make_path(beliefs, 6), 6, DCC) < 0.018 + 1e-9

    def test_complex_model_rejected(self):
        with pytest.raises(UnsupportedModelError):
            path_probability(make_path([6], 6), 6, ComplexContagion(0.35))

    def test_concatenation_multiplies(self):
        rng = np.random.default_rng(77)
        for _ in range(50):
            a = [int(b) for b in rng.integers(0, 7, 3)]
            b = [int(x) for x in rng.integers(0, 7, 4)]
            pa = path_probability(make_path(a, 6), 6, DCC)
            pb = math.prod(contagion_prob(DCC, x, 6) for x in b)
            whole = path_probability(make_path(a + b, 6), 6, DCC)
            assert whole == pytest.approx(pa * pb, rel=1e-12)


class TestMaxProbabilityPath:
    def test_certain_kernel_gives_probability_one(self):
        g = SocialGraph([6, 4, 2], [(0, 1), (1, 2)])
        found = max_probability_path(g, [0], 2, 6, ThresholdCognitive(6))
        assert found is not None
        path, prob = found
        assert prob == 1.0
        assert path.nodes == (INSTITUTION, 0, 1, 2)

    def test_prefers_nearer_belief_route(self):
        # diamond: institution -> 0, then 0-1-3 (distance-1 relay) vs 0-2-3
        # (distance-2 relay); probabilities beta1^2 vs 0.5 * beta1
        g = SocialGraph([6, 5, 4, 5], [(0, 1), (0, 2), (1, 3), (2, 3)])
        found = max_probability_path(g, [0], 3, 6, DCC)
        assert found is not None
        path, prob = found
        assert path.nodes == (INSTITUTION, 0, 1, 3)
        assert prob == pytest.approx(
            contagion_prob(DCC, 6, 6) * BETA1 * BETA1, rel=1e-12
        )

    def test_unreachable_target_absent(self):
        g = SocialGraph([6, 6, 0], [(0, 1)])
        assert max_probability_path(g, [0], 2, 6, DCC) is None

    def test_zero_probability_paths_absent(self):
        g = SocialGraph([6, 0, 6], [(0, 1), (1, 2)])
        assert max_probability_path(g, [0], 2, 6, ThresholdCognitive(1)) is None

    def test_probability_matches_recomputation(self):
        rng = np.random.default_rng(123)
        for _ in range(60):
            g = random_micrograph(rng)
            subs = [u for u in range(g.n) if g.beliefs[u] == 6]
            target = int(rng.integers(g.n))
            found = max_probability_path(g, subs, target, 6, DCC)
            if found is not None:
                path, prob = found
                assert path_probability(path, 6, DCC) == pytest.approx(prob, rel=1e-12)

    @pytest.mark.parametrize(
        "model", [DCC, SimpleContagion(0.15), LinearCognitive(gamma=10, alpha=20)], ids=str
    )
    def test_agrees_with_enumeration(self, model):
        rng = np.random.default_rng(5150)
        for _ in range(60):
            g = random_micrograph(rng)
            subs = [u for u in range(g.n) if g.beliefs[u] == 6] or [0]
            target = int(rng.integers(g.n))
            expected = best_prob_by_enumeration(g, subs, target, 6, model)
            found = max_probability_path(g, subs, target, 6, model)
            if expected is None:
                assert found is None
            else:
                assert found is not None
                assert found[1] == pytest.approx(expected, rel=1e-12)


class TestBelievingNeighbors:
    def test_path_graph_against_enumeration(self):
        # chain 0-1-2-3-4 with beliefs (6, 6, 5, 5, 4); subscribers are the
        # level-6 nodes
        g = SocialGraph([6, 6, 5, 5, 4], [(i, i + 1) for i in range(4)])
        subs = [0, 1]
        for target in range(5):
            for delta in (0.1, 0.5):
                expected = set()
                for v in g.adj[target]:
                    best = best_prob_by_enumeration(g, subs, v, 6, DCC, excluded=(target,))
                    if best is not None and best >= 1.0 - delta:
                        expected.add(v)
                got = believing_neighbors(g, subs, target, 6, DCC, delta)
                assert got == expected, (target, delta)

    def test_endpoint_example_values(self):
        g = SocialGraph([6, 6, 5, 5, 4], [(i, i + 1) for i in range(4)])
        # node 3's best feed avoids node 4: i -> 1 -> 2 -> 3
        assert believing_neighbors(g, [0, 1], 4, 6, DCC, delta=0.1) == {3}
        # node 2 blocks the only route to node 3, so only node 1 qualifies
        assert believing_neighbors(g, [0, 1], 2, 6, DCC, delta=0.1) == {1}

    def test_near_one_delta_takes_any_positive_route(self):
        g = SocialGraph([6, 3, 3, 0], [(0, 1), (1, 2), (2, 3)])
        got = believing_neighbors(g, [0], 3, 6, DCC, delta=1.0 - 1e-12)
        assert got == {2}

    def test_zero_delta_needs_certain_paths(self):
        g = SocialGraph([6, 5, 4, 3], [(0, 1), (1, 2), (2, 3)])
        model = ThresholdCognitive(2)
        # route to node 2 is certain (distances 0,1,2 all within gamma)
        assert believing_neighbors(g, [0], 3, 6, model, delta=0.0) == {2}


class TestDisjointPaths:
    def test_single_neighbor_caps_at_one_path(self):
        g = SocialGraph([6, 6, 6, 5], [(0, 1), (1, 2), (2, 3)])
        paths = disjoint_paths_greedy(g, [0], 3, 6, DCC)
        assert len(paths) == 1
        assert paths[0].nodes == (INSTITUTION, 0, 1, 2)

    def test_two_disjoint_routes_both_found(self):
        # routes 0-1-2 and 3-4-5 both feed node 7 (via nodes 2 and 5)
        g = SocialGraph(
            [6, 6, 6, 6, 6, 6, 0, 4],
            [(0, 1), (1, 2), (2, 7), (3, 4), (4, 5), (5, 7), (6, 7)],
        )
        paths = disjoint_paths_greedy(g, [0, 3], 7, 6, DCC)
        assert len(paths) == 2
        endpoints = {p.nodes[-1] for p in paths}
        assert endpoints == {2, 5}

    def test_pairwise_disjoint_on_random_graphs(self):
        rng = np.random.default_rng(99)
        for _ in range(40):
            g = random_micrograph(rng)
            subs = [u for u in range(g.n) if g.beliefs[u] >= 5] or [0]
            target = int(rng.integers(g.n))
            paths = disjoint_paths_greedy(g, subs, target, 6, DCC)
            seen = set()
            for p in paths:
                agents = set(p.nodes[1:])
                assert target not in agents
                assert not (agents & seen)
                seen |= agents
                assert path_probability(p, 6, DCC) > 0.0


class TestTauPathExists:
    def test_adjacent_subscriber_one_hop(self):
        g = SocialGraph([6, 2], [(0, 1)])
        assert tau_path_exists(g, [0], 1, 1, 6)

    def test_no_qualifying_nodes(self):
        g = SocialGraph([3, 3, 2, 0], [(0, 1), (1, 2), (2, 3)])
        assert not tau_path_exists(g, [0], 3, 2, 6)

    def test_subscriber_target_always_reachable(self):
        g = SocialGraph([6, 0], [(0, 1)])
        assert tau_path_exists(g, [0], 0, 0, 6)

    def test_relay_must_qualify(self):
        # 6 - 3 - 6 - 0: the qualifying subscriber at node 2 feeds the target
        g = SocialGraph([6, 3, 6, 0], [(0, 1), (1, 2), (2, 3)])
        assert tau_path_exists(g, [0, 2], 3, 1, 6)
        # 6 - 3 - 5 - 0: the level-3 relay blocks tau=1 but passes tau=3
        g2 = SocialGraph([6, 3, 5, 0], [(0, 1), (1, 2), (2, 3)])
        assert not tau_path_exists(g2, [0], 3, 1, 6)
        assert tau_path_exists(g2, [0], 3, 3, 6)

    def test_monotone_in_tau(self):
        rng = np.random.default_rng(314)
        for _ in range(40):
            g = random_micrograph(rng)
            subs = [u for u in range(g.n) if g.beliefs[u] == 6]
            target = int(rng.integers(g.n))
            prev = False
            for tau in range(7):
                now = tau_path_exists(g, subs, target, tau, 6)
                assert now or not prev
                prev = now


class TestPathCensus:
    SPEC = GraphSpec(kind="er", n=40, rho=0.15)

    def test_subscriber_level_is_always_covered(self):
        row = path_census(self.SPEC, tau=1, msg_level=6, trials=20, seed=5)
        assert row.proportions[6] == 1.0
        assert all(0.0 <= p <= 1.0 for p in row.proportions)
        assert row.graph_type == "er"

    def test_nondecreasing_in_tau(self):
        r1 = path_census(self.SPEC, tau=1, msg_level=6, trials=20, seed=5)
        r2 = path_census(self.SPEC, tau=2, msg_level=6, trials=20, seed=5)
        assert all(a <= b + 1e-12 for a, b in zip(r1.proportions, r2.proportions))

    def test_deterministic(self):
        a = path_census(self.SPEC, tau=1, msg_level=6, trials=10, seed=9)
        b = path_census(self.SPEC, tau=1, msg_level=6, trials=10, seed=9)
        assert a == b

    def test_csv_rows(self):
        row = path_census(self.SPEC, tau=2, msg_level=6, trials=5, seed=3)
        lines = row.to_csv_rows()
        assert len(lines) == 7
        assert lines[0].startswith("er,2,0,")
