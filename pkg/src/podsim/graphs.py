"""Seeded generation of belief-labeled social graphs.

Four topologies cover the experiment grid: Erdos-Renyi random graphs,
Watts-Strogatz small worlds, Barabasi-Albert preferential attachment,
and multiplicative attribute graphs (MAG) whose edge probability depends
on the two endpoint beliefs -- the high-homophily "silo" case.

All generators are deterministic given (parameters, seed).  Node beliefs
are drawn from a dedicated sub-stream of the seed so that edge sampling
and belief sampling never interleave.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Iterable, Sequence

import numpy as np

from podsim.contagion import BELIEF_MAX, BELIEF_MIN, NUM_LEVELS

# Edge probability by belief distance 0..6 for the homophilic MAG setup.
_MAG_AFFINITY_BY_DISTANCE = (0.167, 0.018, 0.005, 0.002, 0.001, 0.0008, 0.0006)


class SocialGraph:
    """Undirected agent graph with one belief level per node.

    Structure is fixed after construction; only ``beliefs`` is meant to be
    mutated (by a single simulation run at a time).
    """

    def __init__(self, beliefs: Sequence[int], edges: Iterable[tuple[int, int]]):
        self.beliefs = np.asarray(beliefs, dtype=np.int64)
        if self.beliefs.ndim != 1 or self.beliefs.size == 0:
            raise ValueError("graph needs at least one node")
        if self.beliefs.min() < BELIEF_MIN or self.beliefs.max() > BELIEF_MAX:
            raise ValueError("beliefs must lie in [0, 6]")
        n = self.beliefs.size
        seen: set[tuple[int, int]] = set()
        adj: list[list[int]] = [[] for _ in range(n)]
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise ValueError(f"self-loop at node {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for {n} nodes")
            key = (u, v) if u < v else (v, u)
            if key in seen:
                raise ValueError(f"duplicate edge {key}")
            seen.add(key)
            adj[u].append(v)
            adj[v].append(u)
        self._edges = sorted(seen)
        self.adj = [sorted(neighbors) for neighbors in adj]

    @property
    def n(self) -> int:
        return self.beliefs.size

    @property
    def edge_count(self) -> int:
        return len(self._edges)

    def edges(self) -> list[tuple[int, int]]:
        """Edges as (u, v) pairs with u < v, sorted."""
        return list(self._edges)

    def neighbors(self, u: int) -> list[int]:
        return self.adj[u]

    def degree(self, u: int) -> int:
        return len(self.adj[u])

    def copy(self) -> "SocialGraph":
        return SocialGraph(self.beliefs.copy(), self._edges)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SocialGraph):
            return NotImplemented
        return (
            np.array_equal(self.beliefs, other.beliefs) and self._edges == other._edges
        )

    def to_text(self) -> str:
        """Canonical line-oriented serialization (round-trips via from_text)."""
        lines = [f"nodes {self.n}"]
        lines.extend(f"n {u} {int(b)}" for u, b in enumerate(self.beliefs))
        lines.extend(f"e {u} {v}" for u, v in self._edges)
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "SocialGraph":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if not lines or not lines[0].startswith("nodes "):
            raise ValueError("graph text must start with a 'nodes <N>' header")
        n = int(lines[0].split()[1])
        beliefs = np.full(n, -1, dtype=np.int64)
        edges = []
        for ln in lines[1:]:
            parts = ln.split()
            if parts[0] == "n":
                beliefs[int(parts[1])] = int(parts[2])
            elif parts[0] == "e":
                edges.append((int(parts[1]), int(parts[2])))
            else:
                raise ValueError(f"unrecognized graph line: {ln!r}")
        if (beliefs < 0).any():
            missing = int(np.argmax(beliefs < 0))
            raise ValueError(f"node {missing} has no belief line")
        return cls(beliefs, edges)

    def save(self, path) -> None:
        with open(path, "w") as fh:
            fh.write(self.to_text())

    @classmethod
    def load(cls, path) -> "SocialGraph":
        with open(path) as fh:
            return cls.from_text(fh.read())


def _spawn_rngs(seed) -> tuple[np.random.Generator, np.random.Generator]:
    """Belief stream and edge stream derived from one seed."""
    belief_ss, edge_ss = np.random.SeedSequence(seed).spawn(2)
    return np.random.default_rng(belief_ss), np.random.default_rng(edge_ss)


def _draw_beliefs(n: int, rng: np.random.Generator) -> np.ndarray:
    return rng.integers(BELIEF_MIN, BELIEF_MAX + 1, size=n)


def assign_beliefs(n: int, seed) -> np.ndarray:
    """i.i.d. uniform belief levels for n nodes, deterministic per seed."""
    if n < 1:
        raise ValueError(f"need at least one node, got n={n}")
    belief_rng, _ = _spawn_rngs(seed)
    return _draw_beliefs(n, belief_rng)


def gen_er(n: int, rho: float, seed) -> SocialGraph:
    """Erdos-Renyi G(n, rho): every unordered pair connects independently."""
    if n < 1:
        raise ValueError(f"need at least one node, got n={n}")
    if not 0.0 <= rho <= 1.0:
        raise ValueError(f"rho must be in [0, 1], got {rho}")
    belief_rng, edge_rng = _spawn_rngs(seed)
    beliefs = _draw_beliefs(n, belief_rng)
    iu, iv = np.triu_indices(n, k=1)
    mask = edge_rng.random(iu.size) < rho
    return SocialGraph(beliefs, zip(iu[mask].tolist(), iv[mask].tolist()))


def gen_ws(n: int, k: int, rho: float, seed) -> SocialGraph:
    """Watts-Strogatz small world with exactly n*k edges.

    Each node starts linked to its k nearest clockwise neighbors (so the
    lattice degree is 2k), then every lattice edge is rewired with
    probability rho to a uniformly random non-self, non-duplicate target.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if n <= 2 * k:
        raise ValueError(f"need n > 2k, got n={n}, k={k}")
    if not 0.0 <= rho <= 1.0:
        raise ValueError(f"rho must be in [0, 1], got {rho}")
    belief_rng, edge_rng = _spawn_rngs(seed)
    beliefs = _draw_beliefs(n, belief_rng)

    edges = [(u, (u + j) % n) for u in range(n) for j in range(1, k + 1)]
    present = {(min(u, v), max(u, v)) for u, v in edges}
    for idx, (u, v) in enumerate(edges):
        if edge_rng.random() >= rho:
            continue
        # draw a fresh far endpoint; keep the original if the node is saturated
        for _ in range(8 * n):
            w = int(edge_rng.integers(n))
            if w != u and (min(u, w), max(u, w)) not in present:
                present.discard((min(u, v), max(u, v)))
                present.add((min(u, w), max(u, w)))
                edges[idx] = (u, w)
                break
    return SocialGraph(beliefs, present)


def gen_ba(n: int, m: int, seed) -> SocialGraph:
    """Barabasi-Albert preferential attachment with m edges per arriving node.

    Seeded with a clique on min(2m + 1, n) nodes, which makes the total edge
    count exactly n*m whenever n >= 2m + 1.
    """
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    if n <= m:
        raise ValueError(f"need n > m, got n={n}, m={m}")
    belief_rng, edge_rng = _spawn_rngs(seed)
    beliefs = _draw_beliefs(n, belief_rng)

    core = min(2 * m + 1, n)
    edges = [(u, v) for u in range(core) for v in range(u + 1, core)]
    # one entry per degree unit; uniform draws from it are degree-proportional
    repeated: list[int] = [u for u, v in edges] + [v for u, v in edges]
    for node in range(core, n):
        targets: set[int] = set()
        while len(targets) < m:
            targets.add(repeated[int(edge_rng.integers(len(repeated)))])
        for t in sorted(targets):
            edges.append((t, node))
            repeated.append(t)
        repeated.extend([node] * m)
    return SocialGraph(beliefs, edges)


def mag_affinity() -> np.ndarray:
    """7x7 belief-affinity matrix for the homophilic MAG experiments."""
    theta = np.empty((NUM_LEVELS, NUM_LEVELS))
    for i in range(NUM_LEVELS):
        for j in range(NUM_LEVELS):
            theta[i, j] = _MAG_AFFINITY_BY_DISTANCE[abs(i - j)]
    return theta


def gen_mag(n: int, theta: np.ndarray, seed) -> SocialGraph:
    """Multiplicative attribute graph: P(edge u~v) = theta[b_u][b_v].

    Beliefs are drawn first; edge sampling then depends on them.
    """
    if n < 1:
        raise ValueError(f"need at least one node, got n={n}")
    theta = np.asarray(theta, dtype=float)
    if theta.shape != (NUM_LEVELS, NUM_LEVELS):
        raise ValueError(f"theta must be 7x7, got shape {theta.shape}")
    if (theta < 0).any() or (theta > 1).any():
        raise ValueError("theta entries must be probabilities in [0, 1]")
    if not np.array_equal(theta, theta.T):
        raise ValueError("theta must be symmetric")
    belief_rng, edge_rng = _spawn_rngs(seed)
    beliefs = _draw_beliefs(n, belief_rng)
    iu, iv = np.triu_indices(n, k=1)
    pair_prob = theta[beliefs[iu], beliefs[iv]]
    mask = edge_rng.random(iu.size) < pair_prob
    return SocialGraph(beliefs, zip(iu[mask].tolist(), iv[mask].tolist()))


def homophily(g: SocialGraph, normalization: str = "per_edge") -> float:
    """Average belief distance across adjacent pairs.

    ``per_edge`` divides the double-counted neighbor-distance sum by 2|E|
    (the mean distance per edge, in [0, 6]);  ``eq11`` divides the same
    sum by 2|V|^2.
    """
    num = 2.0 * sum(abs(int(g.beliefs[u]) - int(g.beliefs[v])) for u, v in g.edges())
    if normalization == "per_edge":
        if g.edge_count == 0:
            raise ValueError("per-edge homophily is undefined on an empty edge set")
        return num / (2.0 * g.edge_count)
    if normalization == "eq11":
        return num / (2.0 * g.n**2)
    raise ValueError(f"unknown normalization {normalization!r}")


@dataclass(frozen=True)
class GraphSpec:
    """Parameter bundle selecting one topology; ``generate`` builds it."""

    kind: str  # "er" | "ws" | "ba" | "mag"
    n: int
    rho: float | None = None  # er, ws
    k: int | None = None  # ws
    m: int | None = None  # ba
    theta: tuple | None = None  # mag; None means the built-in affinity matrix
    seed: int | None = None

    def validate(self) -> list[str]:
        """Names of offending fields; empty when the spec is well-formed."""
        bad = []
        if self.kind not in ("er", "ws", "ba", "mag"):
            bad.append("graph.type")
        if not isinstance(self.n, int) or self.n < 1:
            bad.append("graph.n")
        if self.kind in ("er", "ws"):
            if self.rho is None or not 0.0 <= self.rho <= 1.0:
                bad.append("graph.rho")
        if self.kind == "ws":
            if self.k is None or self.k < 1:
                bad.append("graph.k")
            elif isinstance(self.n, int) and self.n <= 2 * self.k:
                bad.append("graph.n")
        if self.kind == "ba":
            if self.m is None or self.m < 1:
                bad.append("graph.m")
            elif isinstance(self.n, int) and self.n <= self.m:
                bad.append("graph.n")
        if self.kind == "mag" and self.theta is not None:
            t = np.asarray(self.theta, dtype=float)
            if t.shape != (NUM_LEVELS, NUM_LEVELS) or (t < 0).any() or (t > 1).any():
                bad.append("graph.theta")
        return bad

    def with_seed(self, seed) -> "GraphSpec":
        return replace(self, seed=seed)


def generate(spec: GraphSpec, seed=None) -> SocialGraph:
    """Build the graph a spec describes; an explicit seed overrides spec.seed."""
    bad = spec.validate()
    if bad:
        raise ValueError(f"invalid graph spec, offending fields: {', '.join(bad)}")
    if seed is None:
        seed = spec.seed
    if seed is None:
        raise ValueError("no seed: pass one or set GraphSpec.seed")
    if spec.kind == "er":
        return gen_er(spec.n, spec.rho, seed)
    if spec.kind == "ws":
        return gen_ws(spec.n, spec.k, spec.rho, seed)
    if spec.kind == "ba":
        return gen_ba(spec.n, spec.m, seed)
    theta = mag_affinity() if spec.theta is None else np.asarray(spec.theta, dtype=float)
    return gen_mag(spec.n, theta, seed)
