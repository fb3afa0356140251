"""Why some contagion rules ignore topology: path-probability analysis.

A message reaches an agent only along chains of believers starting at the
broadcaster's subscribers.  The chance a chain relays the message is the
product of every chain member's adoption probability, so one distant-belief
node collapses the whole product.  This module computes those path
probabilities, extracts maximum-probability and node-disjoint paths, and
runs the bounded-distance path census across random graph draws.

The broadcaster-to-subscriber hop always succeeds (subscribers receive
every broadcast); adoption probabilities apply from the first receiving
agent onward.  Complex contagion has no per-node adoption probability
(it depends on live neighborhoods), so path operations reject it.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from podsim.contagion import (
    BELIEF_LEVELS,
    ComplexContagion,
    ContagionModel,
    UnsupportedModelError,
    contagion_prob,
)
from podsim.graphs import GraphSpec, SocialGraph, generate

# Sentinel node id for the broadcaster at the head of a transmission path.
INSTITUTION = -1


@dataclass(frozen=True)
class TransmissionPath:
    """Institution-to-agent chain: node ids and their belief levels, in order."""

    nodes: tuple[int, ...]
    beliefs: tuple[int, ...]

    def __post_init__(self):
        if len(self.nodes) != len(self.beliefs):
            raise ValueError("nodes and beliefs must have equal length")
        if not self.nodes or self.nodes[0] != INSTITUTION:
            raise ValueError("a transmission path starts at the institution")
        agents = self.nodes[1:]
        if len(set(agents)) != len(agents):
            raise ValueError("path repeats a node")


def _reject_complex(model: ContagionModel) -> None:
    if isinstance(model, ComplexContagion):
        raise UnsupportedModelError(
            "complex contagion has no per-node adoption probability; "
            "path probabilities are undefined for it"
        )


def path_probability(path: TransmissionPath, msg_level: int, model: ContagionModel) -> float:
    """Probability the message survives every adoption trial along the path."""
    _reject_complex(model)
    prob = 1.0
    for b in path.beliefs[1:]:
        prob *= contagion_prob(model, b, msg_level)
    return prob


def _adoption_probs(graph: SocialGraph, msg_level: int, model: ContagionModel) -> list[float]:
    """Per-node adoption probability for a message at this level."""
    by_level = [contagion_prob(model, b, msg_level) for b in BELIEF_LEVELS]
    return [by_level[int(b)] for b in graph.beliefs]


def _dijkstra(
    graph: SocialGraph,
    sources: Iterable[int],
    adopt: list[float],
    blocked: set[int],
    stop_at: int | None = None,
) -> tuple[dict[int, float], dict[int, int]]:
    """Min -log-probability distances from the institution through its sources.

    Entering node w costs -log(adopt[w]); zero-probability or blocked nodes
    are impassable.  Returns (dist, prev) over settled nodes; prev of a
    source is the INSTITUTION sentinel.
    """
    dist: dict[int, float] = {}
    prev: dict[int, int] = {}
    heap: list[tuple[float, int]] = []
    for s in set(sources):
        if s in blocked or adopt[s] <= 0.0:
            continue
        d = -math.log(adopt[s])
        if d < dist.get(s, math.inf):
            dist[s] = d
            prev[s] = INSTITUTION
            heapq.heappush(heap, (d, s))
    done: set[int] = set()
    while heap:
        d, v = heapq.heappop(heap)
        if v in done:
            continue
        done.add(v)
        if v == stop_at:
            break
        for w in graph.adj[v]:
            if w in blocked or w in done or adopt[w] <= 0.0:
                continue
            nd = d - math.log(adopt[w])
            if nd < dist.get(w, math.inf):
                dist[w] = nd
                prev[w] = v
                heapq.heappush(heap, (nd, w))
    return {v: dist[v] for v in done}, prev


def _trace_back(
    graph: SocialGraph, prev: dict[int, int], end: int, msg_level: int
) -> TransmissionPath:
    nodes = [end]
    while nodes[-1] != INSTITUTION:
        nodes.append(prev[nodes[-1]])
    nodes.reverse()
    beliefs = tuple(
        int(graph.beliefs[u]) if u != INSTITUTION else int(msg_level) for u in nodes
    )
    return TransmissionPath(tuple(nodes), beliefs)


def max_probability_path(
    graph: SocialGraph,
    subscribers: Iterable[int],
    target: int,
    msg_level: int,
    model: ContagionModel,
    excluded: Iterable[int] = (),
) -> tuple[TransmissionPath, float] | None:
    """Highest-probability institution-to-target path, or None when every
    path has probability zero.

    Shortest-path search on weights -log(adoption probability of the hop's
    destination).  ``excluded`` nodes are removed from the search entirely.
    """
    _reject_complex(model)
    adopt = _adoption_probs(graph, msg_level, model)
    dist, prev = _dijkstra(graph, subscribers, adopt, set(excluded), stop_at=target)
    if target not in dist:
        return None
    return _trace_back(graph, prev, target, msg_level), math.exp(-dist[target])


def believing_neighbors(
    graph: SocialGraph,
    subscribers: Iterable[int],
    target: int,
    msg_level: int,
    model: ContagionModel,
    delta: float,
) -> set[int]:
    """Neighbors of the target likely to relay the message to it.

    A neighbor qualifies when its best institution-to-neighbor path (never
    passing through the target, which cannot relay before believing) has
    probability >= 1 - delta.
    """
    if not 0.0 <= delta < 1.0:
        raise ValueError(f"delta must be in [0, 1), got {delta}")
    _reject_complex(model)
    adopt = _adoption_probs(graph, msg_level, model)
    dist, _ = _dijkstra(graph, subscribers, adopt, {target})
    threshold = 1.0 - delta
    return {
        v
        for v in graph.adj[target]
        if v in dist and math.exp(-dist[v]) >= threshold
    }


def disjoint_paths_greedy(
    graph: SocialGraph,
    subscribers: Iterable[int],
    target: int,
    msg_level: int,
    model: ContagionModel,
) -> list[TransmissionPath]:
    """Node-disjoint institution-to-neighbor-of-target paths, greedily extracted.

    Repeatedly takes the current maximum-probability path ending at any
    remaining neighbor of the target, then retires every agent on it.  A
    heuristic: the exact maximum-total-probability disjoint path set is
    left open.
    """
    _reject_complex(model)
    adopt = _adoption_probs(graph, msg_level, model)
    used: set[int] = {target}
    sub_pool = set(subscribers) - {target}
    neighbor_pool = set(graph.adj[target])
    paths: list[TransmissionPath] = []
    while True:
        sources = sub_pool - used
        remaining = neighbor_pool - used
        if not sources or not remaining:
            break
        dist, prev = _dijkstra(graph, sources, adopt, used)
        best = min((dist[v], v) for v in remaining if v in dist) if any(
            v in dist for v in remaining
        ) else None
        if best is None:
            break
        path = _trace_back(graph, prev, best[1], msg_level)
        paths.append(path)
        used.update(path.nodes[1:])
    return paths


def tau_path_exists(
    graph: SocialGraph,
    institution_subscribers: Iterable[int],
    target: int,
    tau: int,
    msg_level: int,
) -> bool:
    """Is there a relay path to the target using only nodes within tau of the message?

    True when the target subscribes directly (the broadcaster reaches it with
    no relays), or when some neighbor of the target is reachable from a
    subscriber through nodes -- endpoints included, target excluded -- whose
    belief distance to the message level is at most tau.
    """
    if tau < 0:
        raise ValueError(f"tau must be >= 0, got {tau}")
    subs = set(institution_subscribers)
    if target in subs:
        return True
    ok = np.abs(graph.beliefs - msg_level) <= tau
    wanted = set(graph.adj[target])
    frontier = [s for s in subs if ok[s] and s != target]
    seen = set(frontier)
    while frontier:
        v = frontier.pop()
        if v in wanted:
            return True
        for w in graph.adj[v]:
            if w == target or w in seen or not ok[w]:
                continue
            seen.add(w)
            frontier.append(w)
    return False


@dataclass(frozen=True)
class PathCensusRow:
    """Fraction of graph draws with a qualifying path, per target belief level."""

    graph_type: str
    tau: int
    proportions: tuple[float, ...]  # indexed by target belief 0..6

    def to_csv_rows(self) -> list[str]:
        return [
            f"{self.graph_type},{self.tau},{b},{p:.6f}"
            for b, p in enumerate(self.proportions)
        ]


def path_census(
    graph_spec: GraphSpec,
    tau: int,
    msg_level: int,
    trials: int,
    seed: int = 0,
    institution_belief: int | None = None,
    epsilon: int = 0,
) -> PathCensusRow:
    """Run tau_path_exists over fresh graph draws, one random target per level.

    Each trial generates its own graph (derived seed) shared by all seven
    target levels; the vanishingly rare draw with an empty level is
    regenerated under a bumped seed for that level only.
    """
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    if institution_belief is None:
        institution_belief = msg_level
    hits = np.zeros(len(BELIEF_LEVELS), dtype=np.int64)
    for trial in range(trials):
        graph = generate(graph_spec, seed=[seed, trial])
        pick_rng = np.random.default_rng(np.random.SeedSequence([seed, trial, 1]))
        for level in BELIEF_LEVELS:
            g = graph
            candidates = np.flatnonzero(g.beliefs == level)
            bump = 0
            while candidates.size == 0:
                bump += 1
                g = generate(graph_spec, seed=[seed, trial, 2, bump])
                candidates = np.flatnonzero(g.beliefs == level)
            target = int(pick_rng.choice(candidates))
            subs = np.flatnonzero(np.abs(g.beliefs - institution_belief) <= epsilon)
            if tau_path_exists(g, subs.tolist(), target, tau, msg_level):
                hits[level] += 1
    return PathCensusRow(
        graph_type=graph_spec.kind,
        tau=tau,
        proportions=tuple(float(h) / trials for h in hits),
    )
