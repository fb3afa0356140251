"""Simulation loop: subscriptions, deliveries, cascades, traces, batching."""

import numpy as np
import pytest

from podsim.contagion import DCC, ComplexContagion, SimpleContagion
from podsim.engine import (
    Institution,
    Message,
    Simulation,
    run,
    run_batch,
    subscribe,
)
from podsim.graphs import GraphSpec, SocialGraph
from podsim.schedule import ExplicitSchedule, SingleSchedule


class ScriptedRandom:
    """Stand-in random stream: random() pops scripted draws, shuffle is a no-op."""

    def __init__(self, draws):
        self.draws = list(draws)
        self.calls = 0

    def random(self):
        self.calls += 1
        return self.draws.pop(0)

    def shuffle(self, seq):
        pass


def chain_graph(beliefs):
    return SocialGraph(beliefs, [(i, i + 1) for i in range(len(beliefs) - 1)])


class TestSubscribe:
    def test_epsilon_zero_matches_institution_exactly(self):
        g = SocialGraph([6, 3, 6, 0, 5], [(0, 1), (1, 2), (2, 3), (3, 4)])
        assert subscribe(g, 6, 0) == (0, 2)

    def test_epsilon_six_takes_everyone(self):
        g = chain_graph([0, 1, 2, 3, 4, 5, 6])
        assert subscribe(g, 6, 6) == tuple(range(7))

    def test_no_matching_agents(self):
        g = chain_graph([0, 1, 2])
        assert subscribe(g, 6, 0) == ()

    def test_negative_epsilon_rejected(self):
        with pytest.raises(ValueError):
            subscribe(chain_graph([1, 2]), 6, -1)


class TestDeliver:
    def test_success_updates_belief_and_processed_set(self):
        g = chain_graph([6, 3])
        sim = Simulation(g, DCC, [], rng=ScriptedRandom([0.0]))
        msg = Message(uid=0, belief=5, origin=0, tick=1)
        assert sim.deliver(1, msg) is True
        assert sim.beliefs[1] == 5
        assert 0 in sim.heard[1]
        assert sim.messages_believed == 1
        assert g.beliefs[1] == 5

    def test_failure_mutates_nothing(self):
        g = chain_graph([6, 3])
        sim = Simulation(g, DCC, [], rng=ScriptedRandom([0.9999]))
        msg = Message(uid=0, belief=5, origin=0, tick=1)
        assert sim.deliver(1, msg) is False
        assert sim.beliefs[1] == 3
        assert sim.heard[1] == set()
        assert sim.messages_believed == 0

    def test_one_step_distance_rate(self):
        # beta(6, 5) for the stubborn sigmoid is 0.982; check the Monte-Carlo
        # rate within 3 sigma over 2000 trials
        hits = 0
        trials = 2000
        for t in range(trials):
            g = chain_graph([6, 6])
            sim = Simulation(g, DCC, [], seed=t)
            if sim.deliver(0, Message(uid=0, belief=5, origin=0, tick=1)):
                hits += 1
        p = 0.982
        sigma = (p * (1 - p) / trials) ** 0.5
        assert abs(hits / trials - p) <= 3 * sigma

    def test_exposure_compounds_over_repeated_deliveries(self):
        # k fresh broadcasts to a one-gap... distance-3 agent: adoption
        # frequency approaches 1 - (1 - 0.018)^k
        k = 40
        beta3 = 1.0 / (1.0 + np.exp(4.0))
        expected = 1.0 - (1.0 - beta3) ** k
        trials = 2000
        hits = 0
        for t in range(trials):
            g = chain_graph([3, 3])
            sim = Simulation(g, DCC, [], seed=10_000 + t)
            for uid in range(k):
                if sim.deliver(0, Message(uid=uid, belief=6, origin=0, tick=1)):
                    hits += 1
                    break
        sigma = (expected * (1 - expected) / trials) ** 0.5
        assert abs(hits / trials - expected) <= 3 * sigma

    def test_complex_without_believing_neighbors_never_adopts(self):
        g = chain_graph([0, 3, 0])
        sim = Simulation(g, ComplexContagion(0.35), [], seed=1)
        for uid in range(50):
            assert not sim.deliver(1, Message(uid, 6, 0, 1), sender_fraction_ctx=0.0)


class TestStep:
    def test_no_institutions_leaves_histogram_unchanged(self):
        g = chain_graph([0, 1, 2, 3, 4, 5, 6])
        sim = Simulation(g, DCC, [], seed=1)
        before = sim.histogram()
        after = sim.step(SingleSchedule(6))
        assert np.array_equal(before, after)

    def test_saturated_population_is_a_fixed_point(self):
        g = SocialGraph([6] * 30, [(i, j) for i in range(30) for j in range(i + 1, 30)])
        inst = Institution(0, 6, subscribe(g, 6, 0))
        sim = Simulation(g, DCC, [inst], seed=2)
        before = sim.histogram()
        for _ in range(5):
            after = sim.step(SingleSchedule(6))
        assert np.array_equal(before, after)
        assert before[6] == 1.0

    def test_agents_forward_original_message_level(self):
        # chain 6-3-0 with an always-believe stream: if relays forwarded their
        # own prior instead of the message, the tail agent would not end at 6
        g = chain_graph([6, 3, 0])
        inst = Institution(0, 6, (0,))
        sim = Simulation(g, DCC, [inst], rng=ScriptedRandom([0.0] * 10))
        sim.step(SingleSchedule(6))
        assert sim.beliefs == [6, 6, 6]

    def test_one_adoption_trial_per_uid(self):
        # star: two subscribers feed the same hub; the second copy of the uid
        # must not trigger a second trial
        g = SocialGraph([6, 6, 3], [(0, 2), (1, 2)])
        inst = Institution(0, 6, (0, 1))
        rng = ScriptedRandom([0.0, 0.0, 0.9999, 0.5, 0.5])
        sim = Simulation(g, SimpleContagion(0.5), [inst], rng=rng)
        sim.step(SingleSchedule(6))
        # draws: s0 believes, s1 believes, hub fails once; both hub copies
        # consumed, no further draws
        assert rng.calls == 3
        assert sim.beliefs[2] == 3

    def test_scripted_two_message_tick(self):
        # one tick carrying two broadcasts (levels 4 then 3): subscribers 0 and
        # 2 take the first, only 2 takes the second, the hub relays the first
        g = SocialGraph([4, 1, 5, 2], [(0, 3), (1, 3), (2, 3)])
        inst = Institution(0, 4, (0, 1, 2))
        draws = [
            0.0,  # msg0 (level 4) -> node 0 believes
            0.9,  # msg0 -> node 1 fails
            0.0,  # msg0 -> node 2 believes
            0.9,  # msg1 (level 3) -> node 0 fails
            0.9,  # msg1 -> node 1 fails
            0.0,  # msg1 -> node 2 believes
            0.0,  # msg0 -> hub 3 believes (first copy; second is dropped)
            0.9,  # msg1 -> hub 3 fails
        ]
        rng = ScriptedRandom(draws)
        sim = Simulation(g, SimpleContagion(0.5), [inst], rng=rng)
        sim.step(ExplicitSchedule({1: (4, 3)}))
        assert sim.beliefs == [4, 1, 3, 4]
        assert rng.calls == 8
        assert sim.messages_believed == 4


class TestRun:
    SPEC = GraphSpec(kind="er", n=120, rho=0.08)

    def test_trace_shape_and_normalization(self):
        trace = run(self.SPEC, DCC, SingleSchedule(6), T=20, seed=3)
        assert trace.shape == (21, 7)
        assert (trace >= 0).all()
        assert np.allclose(trace.sum(axis=1), 1.0, atol=1e-9)

    def test_deterministic(self):
        a = run(self.SPEC, SimpleContagion(0.15), SingleSchedule(6), T=15, seed=9)
        b = run(self.SPEC, SimpleContagion(0.15), SingleSchedule(6), T=15, seed=9)
        assert np.array_equal(a, b)

    def test_different_seed_differs(self):
        a = run(self.SPEC, SimpleContagion(0.15), SingleSchedule(6), T=15, seed=1)
        b = run(self.SPEC, SimpleContagion(0.15), SingleSchedule(6), T=15, seed=2)
        assert not np.array_equal(a, b)

    def test_zero_ticks_rejected(self):
        with pytest.raises(ValueError):
            run(self.SPEC, DCC, SingleSchedule(6), T=0, seed=1)


class TestRunBatch:
    SPEC = GraphSpec(kind="er", n=100, rho=0.08)

    def test_single_repetition_has_zero_variance(self):
        bt = run_batch(self.SPEC, DCC, SingleSchedule(6), T=10, repetitions=1, seed=4)
        assert np.array_equal(bt.var, np.zeros_like(bt.var))

    def test_mean_histograms_normalized(self):
        bt = run_batch(self.SPEC, DCC, SingleSchedule(6), T=10, repetitions=4, seed=4)
        assert np.allclose(bt.mean.sum(axis=1), 1.0, atol=1e-9)
        assert bt.seeds == [4, 5, 6, 7]

    def test_csv_layout(self):
        bt = run_batch(self.SPEC, DCC, SingleSchedule(6), T=5, repetitions=2, seed=4)
        lines = bt.to_csv().strip().split("\n")
        assert lines[0].split(",") == (
            ["tick"]
            + [f"level_{b}_mean" for b in range(7)]
            + [f"level_{b}_var" for b in range(7)]
        )
        assert len(lines) == 7  # header + T+1 rows
        first = lines[1].split(",")
        assert first[0] == "0"
        assert all("." in cell and len(cell.split(".")[1]) == 6 for cell in first[1:])

    def test_csv_deterministic(self):
        a = run_batch(self.SPEC, DCC, SingleSchedule(6), T=8, repetitions=3, seed=11)
        b = run_batch(self.SPEC, DCC, SingleSchedule(6), T=8, repetitions=3, seed=11)
        assert a.to_csv() == b.to_csv()
