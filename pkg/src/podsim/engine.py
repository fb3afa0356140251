"""The opinion-diffusion simulation loop.

One or more institutional broadcasters push belief-valued messages to
their subscribers each tick.  Every delivery is a Bernoulli adoption
trial governed by the contagion model; an agent that adopts takes the
message's belief level and forwards the *original* message to all its
neighbors, so a believed message cascades through the graph within the
tick.  Each agent processes a given message uid at most once per run.

A run is strictly sequential and deterministic per seed.  Batches are
independent runs on derived seeds, merged afterwards.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass

import numpy as np

from podsim.contagion import (
    BELIEF_LEVELS,
    NUM_LEVELS,
    CognitiveModel,
    ComplexContagion,
    ContagionModel,
    SimpleContagion,
    contagion_prob,
)
from podsim.graphs import GraphSpec, SocialGraph, generate
from podsim.schedule import Schedule, schedule_levels


@dataclass(frozen=True)
class Message:
    """One broadcast: a belief level stamped with a run-unique uid."""

    uid: int
    belief: int
    origin: int
    tick: int


@dataclass(frozen=True)
class Institution:
    """Broadcaster with directed edges to its subscribers; belief never updates."""

    ident: int
    belief: int
    subscribers: tuple[int, ...]


def subscribe(graph: SocialGraph, institution_belief: int, epsilon: int) -> tuple[int, ...]:
    """Agents whose initial belief is within epsilon of the institution's.

    Computed once from the beliefs at call time and never refreshed during
    a run.
    """
    if epsilon < 0:
        raise ValueError(f"epsilon must be >= 0, got {epsilon}")
    close = np.abs(graph.beliefs - institution_belief) <= epsilon
    return tuple(int(u) for u in np.flatnonzero(close))


class Simulation:
    """Mutable state for one run: graph beliefs, heard-message sets, RNG."""

    def __init__(
        self,
        graph: SocialGraph,
        model: ContagionModel,
        institutions: list[Institution],
        seed=0,
        rng: random.Random | None = None,
    ):
        for inst in institutions:
            for s in inst.subscribers:
                if not 0 <= s < graph.n:
                    raise ValueError(f"subscriber {s} is not a node of the graph")
        self.graph = graph
        self.model = model
        self.institutions = list(institutions)
        # str seeding hashes via sha512, so streams are stable across processes
        self.rng = rng if rng is not None else random.Random(f"pod-{seed}")
        self.tick = 0
        self.heard: list[set[int]] = [set() for _ in range(graph.n)]
        self.messages_believed = 0
        self._next_uid = 0
        self._beliefs: list[int] = [int(b) for b in graph.beliefs]
        if isinstance(model, CognitiveModel):
            self._beta = [
                [contagion_prob(model, i, j) for j in BELIEF_LEVELS] for i in BELIEF_LEVELS
            ]
        else:
            self._beta = None

    @property
    def beliefs(self) -> list[int]:
        return self._beliefs

    def _sync_graph(self) -> None:
        self.graph.beliefs[:] = self._beliefs

    def histogram(self) -> np.ndarray:
        """Fractions of agents at each belief level; entries sum to 1."""
        counts = np.bincount(self._beliefs, minlength=NUM_LEVELS)
        return counts / self.graph.n

    def _believing_fraction(self, receiver: int, level: int) -> float:
        nbrs = self.graph.adj[receiver]
        if not nbrs:
            return 0.0
        beliefs = self._beliefs
        return sum(1 for w in nbrs if beliefs[w] == level) / len(nbrs)

    def deliver(self, receiver: int, msg: Message, sender_fraction_ctx: float = 0.0) -> bool:
        """One adoption trial.  Caller filters out uids the receiver has processed.

        On success the receiver takes the message's belief level and the uid
        joins its processed set; on failure nothing changes.
        """
        prob = contagion_prob(self.model, self._beliefs[receiver], msg.belief, sender_fraction_ctx)
        if self.rng.random() < prob:
            self._beliefs[receiver] = msg.belief
            self.heard[receiver].add(msg.uid)
            self.messages_believed += 1
            self._sync_graph()
            return True
        return False

    def step(self, schedule: Schedule) -> np.ndarray:
        """Advance one tick: broadcast, cascade to quiescence, return the histogram."""
        self.tick += 1
        queue: deque[tuple[Message, int]] = deque()
        for inst in self.institutions:
            for level in schedule_levels(schedule, self.tick):
                msg = Message(self._next_uid, int(level), inst.ident, self.tick)
                self._next_uid += 1
                fan_out = list(inst.subscribers)
                self.rng.shuffle(fan_out)
                queue.extend((msg, s) for s in fan_out)

        # Hot loop; mirrors deliver() but inlines the trial.  Each agent gets
        # one trial per uid: the uid is marked heard at first receipt, so later
        # copies arriving through other neighbors are dropped.
        beliefs = self._beliefs
        heard = self.heard
        adj = self.graph.adj
        rand = self.rng.random
        model = self.model
        beta = self._beta
        simple_p = model.p if isinstance(model, SimpleContagion) else None
        complex_alpha = model.alpha if isinstance(model, ComplexContagion) else None
        while queue:
            msg, v = queue.popleft()
            uid = msg.uid
            if uid in heard[v]:
                continue
            heard[v].add(uid)
            level = msg.belief
            if simple_p is not None:
                prob = simple_p
            elif complex_alpha is not None:
                prob = 1.0 if self._believing_fraction(v, level) >= complex_alpha else 0.0
            else:
                prob = beta[beliefs[v]][level]
            if prob > 0.0 and rand() < prob:
                beliefs[v] = level
                self.messages_believed += 1
                queue.extend((msg, w) for w in adj[v])

        self._sync_graph()
        return self.histogram()


def run(
    graph_spec: GraphSpec,
    model: ContagionModel,
    schedule: Schedule,
    T: int,
    institution_belief: int = 6,
    epsilon: int = 0,
    seed: int = 0,
) -> np.ndarray:
    """One full run; returns a (T+1, 7) trace of per-tick belief fractions.

    Row 0 is the initial distribution.  The seed drives both graph
    generation and the simulation's random stream.
    """
    if T < 1:
        raise ValueError(f"T must be >= 1, got {T}")
    graph = generate(graph_spec, seed=seed)
    subs = subscribe(graph, institution_belief, epsilon)
    institutions = [Institution(0, institution_belief, subs)]
    sim = Simulation(graph, model, institutions, seed=seed)
    trace = np.empty((T + 1, NUM_LEVELS))
    trace[0] = sim.histogram()
    for t in range(1, T + 1):
        trace[t] = sim.step(schedule)
    return trace


@dataclass
class BatchTrace:
    """Mean and variance of per-tick belief fractions across repetitions."""

    mean: np.ndarray  # (T+1, 7)
    var: np.ndarray  # (T+1, 7)
    runs: np.ndarray  # (reps, T+1, 7)
    seeds: list[int]

    @property
    def final_mean(self) -> np.ndarray:
        return self.mean[-1]

    def to_csv(self) -> str:
        header = (
            ["tick"]
            + [f"level_{b}_mean" for b in range(NUM_LEVELS)]
            + [f"level_{b}_var" for b in range(NUM_LEVELS)]
        )
        lines = [",".join(header)]
        for t in range(self.mean.shape[0]):
            cells = [str(t)]
            cells.extend(f"{x:.6f}" for x in self.mean[t])
            cells.extend(f"{x:.6f}" for x in self.var[t])
            lines.append(",".join(cells))
        return "\n".join(lines) + "\n"


def run_batch(
    graph_spec: GraphSpec,
    model: ContagionModel,
    schedule: Schedule,
    T: int,
    repetitions: int,
    institution_belief: int = 6,
    epsilon: int = 0,
    seed: int = 0,
) -> BatchTrace:
    """Independent runs on seeds seed, seed+1, ... merged into mean/variance traces."""
    if repetitions < 1:
        raise ValueError(f"repetitions must be >= 1, got {repetitions}")
    seeds = [seed + r for r in range(repetitions)]
    runs = np.stack(
        [
            run(graph_spec, model, schedule, T, institution_belief, epsilon, s)
            for s in seeds
        ]
    )
    return BatchTrace(mean=runs.mean(axis=0), var=runs.var(axis=0), runs=runs, seeds=seeds)
