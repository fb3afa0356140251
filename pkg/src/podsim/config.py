"""JSON run-configuration parsing and validation.

A run config is one JSON object:

    {
      "graph":    {"type": "er", "n": 500, "rho": 0.05},
      "model":    {"type": "simple", "p": 0.15},
      "schedule": {"type": "single", "level": 6},
      "T": 100,
      "institution_belief": 6,
      "epsilon": 0,
      "repetitions": 10,
      "seed": 1000
    }

Graph types: er {n, rho} | ws {n, k, rho} | ba {n, m} | mag {n [, theta]}.
Model types: simple {p} | complex {alpha} | threshold {gamma} |
linear {gamma, alpha} | sigmoid {alpha, gamma} | dcc {}.  The cognitive
families also accept {"preset": "gullible"|"normal"|"stubborn"} in place
of numeric parameters.
Schedule types: single {level} | split {first, second, switch_tick} |
gradual {start, end, interval} | explicit {levels: {"<tick>": [levels]}}.

Validation collects every offending field before raising, so one error
names them all.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from podsim.contagion import (
    DCC,
    ComplexContagion,
    ContagionModel,
    LINEAR_PRESETS,
    LinearCognitive,
    SIGMOID_PRESETS,
    SigmoidCognitive,
    SimpleContagion,
    THRESHOLD_PRESETS,
    ThresholdCognitive,
)
from podsim.graphs import GraphSpec
from podsim.schedule import (
    ExplicitSchedule,
    GradualSchedule,
    Schedule,
    SingleSchedule,
    SplitSchedule,
)


class ConfigError(ValueError):
    """Config document failed validation; ``fields`` names every offender."""

    def __init__(self, fields: list[str]):
        self.fields = list(fields)
        super().__init__(f"invalid config, offending fields: {', '.join(self.fields)}")


@dataclass(frozen=True)
class RunConfig:
    graph: GraphSpec
    model: ContagionModel
    schedule: Schedule
    T: int
    institution_belief: int
    epsilon: int
    repetitions: int
    seed: int


def _num(d, key, lo=None, hi=None, integer=False):
    """Value of d[key] if it is a number in range, else None."""
    v = d.get(key)
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        return None
    if integer and not float(v).is_integer():
        return None
    if lo is not None and v < lo:
        return None
    if hi is not None and v > hi:
        return None
    return int(v) if integer else float(v)


def _unknown_keys(d, allowed, prefix, bad):
    for key in d:
        if key not in allowed:
            bad.append(f"{prefix}.{key}")


def parse_graph_spec(d, bad: list[str], prefix: str = "graph") -> GraphSpec | None:
    if not isinstance(d, dict):
        bad.append(prefix)
        return None
    kind = d.get("type")
    if kind not in ("er", "ws", "ba", "mag"):
        bad.append(f"{prefix}.type")
        return None
    allowed = {"er": {"type", "n", "rho"}, "ws": {"type", "n", "k", "rho"},
               "ba": {"type", "n", "m"}, "mag": {"type", "n", "theta"}}[kind]
    _unknown_keys(d, allowed, prefix, bad)
    n = _num(d, "n", lo=1, integer=True)
    if n is None:
        bad.append(f"{prefix}.n")
    kwargs = {}
    if kind in ("er", "ws"):
        rho = _num(d, "rho", lo=0.0, hi=1.0)
        if rho is None:
            bad.append(f"{prefix}.rho")
        kwargs["rho"] = rho
    if kind == "ws":
        k = _num(d, "k", lo=1, integer=True)
        if k is None:
            bad.append(f"{prefix}.k")
        elif n is not None and n <= 2 * k:
            bad.append(f"{prefix}.n")
        kwargs["k"] = k
    if kind == "ba":
        m = _num(d, "m", lo=1, integer=True)
        if m is None:
            bad.append(f"{prefix}.m")
        elif n is not None and n <= m:
            bad.append(f"{prefix}.n")
        kwargs["m"] = m
    if kind == "mag" and d.get("theta") is not None:
        t = d["theta"]
        rows_ok = (
            isinstance(t, list)
            and len(t) == 7
            and all(isinstance(r, list) and len(r) == 7 for r in t)
            and all(
                isinstance(x, (int, float)) and 0 <= x <= 1 for r in t for x in r
            )
        )
        if not rows_ok:
            bad.append(f"{prefix}.theta")
        else:
            kwargs["theta"] = tuple(tuple(float(x) for x in r) for r in t)
    if any(f.startswith(prefix) for f in bad):
        return None
    return GraphSpec(kind=kind, n=n, **kwargs)


_COGNITIVE_PRESETS = {
    "threshold": THRESHOLD_PRESETS,
    "linear": LINEAR_PRESETS,
    "sigmoid": SIGMOID_PRESETS,
}


def parse_model(d, bad: list[str], prefix: str = "model") -> ContagionModel | None:
    if not isinstance(d, dict):
        bad.append(prefix)
        return None
    kind = d.get("type")
    if kind == "dcc":
        _unknown_keys(d, {"type"}, prefix, bad)
        return DCC
    if kind in _COGNITIVE_PRESETS and "preset" in d:
        _unknown_keys(d, {"type", "preset"}, prefix, bad)
        model = _COGNITIVE_PRESETS[kind].get(d["preset"])
        if model is None:
            bad.append(f"{prefix}.preset")
        return model
    if kind == "simple":
        _unknown_keys(d, {"type", "p"}, prefix, bad)
        p = _num(d, "p")
        if p is None or not 0.0 < p < 1.0:
            bad.append(f"{prefix}.p")
            return None
        return SimpleContagion(p)
    if kind == "complex":
        _unknown_keys(d, {"type", "alpha"}, prefix, bad)
        alpha = _num(d, "alpha", lo=0.0, hi=1.0)
        if alpha is None:
            bad.append(f"{prefix}.alpha")
            return None
        return ComplexContagion(alpha)
    if kind == "threshold":
        _unknown_keys(d, {"type", "gamma"}, prefix, bad)
        gamma = _num(d, "gamma", lo=0, integer=True)
        if gamma is None:
            bad.append(f"{prefix}.gamma")
            return None
        return ThresholdCognitive(gamma)
    if kind == "linear":
        _unknown_keys(d, {"type", "gamma", "alpha"}, prefix, bad)
        gamma = _num(d, "gamma", lo=0.0)
        alpha = _num(d, "alpha", lo=0.0)
        if gamma is None:
            bad.append(f"{prefix}.gamma")
        if alpha is None:
            bad.append(f"{prefix}.alpha")
        if gamma == 0 and alpha == 0:
            bad.append(f"{prefix}.gamma")
        if gamma is None or alpha is None or (gamma == 0 and alpha == 0):
            return None
        return LinearCognitive(gamma=gamma, alpha=alpha)
    if kind == "sigmoid":
        _unknown_keys(d, {"type", "alpha", "gamma"}, prefix, bad)
        alpha = _num(d, "alpha", lo=0.0)
        gamma = _num(d, "gamma")
        if alpha is None:
            bad.append(f"{prefix}.alpha")
        if gamma is None:
            bad.append(f"{prefix}.gamma")
        if alpha is None or gamma is None:
            return None
        return SigmoidCognitive(alpha=alpha, gamma=gamma)
    bad.append(f"{prefix}.type")
    return None


def parse_schedule(d, bad: list[str], prefix: str = "schedule") -> Schedule | None:
    if not isinstance(d, dict):
        bad.append(prefix)
        return None
    kind = d.get("type")
    level_ok = lambda v: v is not None  # noqa: E731
    try:
        if kind == "single":
            _unknown_keys(d, {"type", "level"}, prefix, bad)
            level = _num(d, "level", lo=0, hi=6, integer=True)
            if not level_ok(level):
                bad.append(f"{prefix}.level")
                return None
            return SingleSchedule(level)
        if kind == "split":
            _unknown_keys(d, {"type", "first", "second", "switch_tick"}, prefix, bad)
            first = _num(d, "first", lo=0, hi=6, integer=True)
            second = _num(d, "second", lo=0, hi=6, integer=True)
            switch = _num(d, "switch_tick", lo=1, integer=True)
            for name, v in (("first", first), ("second", second), ("switch_tick", switch)):
                if v is None:
                    bad.append(f"{prefix}.{name}")
            if None in (first, second, switch):
                return None
            return SplitSchedule(first, second, switch)
        if kind == "gradual":
            _unknown_keys(d, {"type", "start", "end", "interval"}, prefix, bad)
            start = _num(d, "start", lo=0, hi=6, integer=True) if "start" in d else 6
            end = _num(d, "end", lo=0, hi=6, integer=True) if "end" in d else 0
            interval = _num(d, "interval", lo=1, integer=True) if "interval" in d else 10
            for name, v in (("start", start), ("end", end), ("interval", interval)):
                if v is None:
                    bad.append(f"{prefix}.{name}")
            if None in (start, end, interval) or end > start:
                if end is not None and start is not None and end > start:
                    bad.append(f"{prefix}.end")
                return None
            return GradualSchedule(start, end, interval)
        if kind == "explicit":
            _unknown_keys(d, {"type", "levels"}, prefix, bad)
            levels = d.get("levels")
            if not isinstance(levels, dict) or not levels:
                bad.append(f"{prefix}.levels")
                return None
            parsed = {}
            for t, vals in levels.items():
                tick = int(t)
                if tick < 1 or not isinstance(vals, list) or not all(
                    isinstance(v, int) and 0 <= v <= 6 for v in vals
                ):
                    bad.append(f"{prefix}.levels.{t}")
                    continue
                parsed[tick] = tuple(vals)
            if any(f.startswith(f"{prefix}.levels.") for f in bad):
                return None
            return ExplicitSchedule(parsed)
    except (TypeError, ValueError):
        bad.append(prefix)
        return None
    bad.append(f"{prefix}.type")
    return None


def parse_run_config(doc: dict) -> RunConfig:
    if not isinstance(doc, dict):
        raise ConfigError(["<document>"])
    bad: list[str] = []
    _unknown_keys(
        doc,
        {"graph", "model", "schedule", "T", "institution_belief", "epsilon",
         "repetitions", "seed"},
        "config",
        bad,
    )
    graph = parse_graph_spec(doc.get("graph"), bad)
    model = parse_model(doc.get("model"), bad)
    schedule = parse_schedule(doc.get("schedule"), bad)
    T = _num(doc, "T", lo=1, integer=True)
    if T is None:
        bad.append("T")
    inst = _num(doc, "institution_belief", lo=0, hi=6, integer=True) if "institution_belief" in doc else 6
    if inst is None:
        bad.append("institution_belief")
    eps = _num(doc, "epsilon", lo=0, hi=6, integer=True) if "epsilon" in doc else 0
    if eps is None:
        bad.append("epsilon")
    reps = _num(doc, "repetitions", lo=1, integer=True) if "repetitions" in doc else 1
    if reps is None:
        bad.append("repetitions")
    seed = _num(doc, "seed", integer=True) if "seed" in doc else 0
    if seed is None:
        bad.append("seed")
    if bad:
        raise ConfigError(bad)
    return RunConfig(
        graph=graph, model=model, schedule=schedule, T=T,
        institution_belief=inst, epsilon=eps, repetitions=reps, seed=seed,
    )


def load_run_config(path) -> RunConfig:
    with open(path) as fh:
        return parse_run_config(json.load(fh))


def parse_census_config(doc: dict):
    """Census config: graph + tau, msg_level, trials, seed [, institution_belief, epsilon]."""
    if not isinstance(doc, dict):
        raise ConfigError(["<document>"])
    bad: list[str] = []
    _unknown_keys(
        doc, {"graph", "tau", "msg_level", "trials", "seed", "institution_belief", "epsilon"},
        "config", bad,
    )
    graph = parse_graph_spec(doc.get("graph"), bad)
    tau = _num(doc, "tau", lo=0, integer=True)
    if tau is None:
        bad.append("tau")
    msg = _num(doc, "msg_level", lo=0, hi=6, integer=True)
    if msg is None:
        bad.append("msg_level")
    trials = _num(doc, "trials", lo=1, integer=True)
    if trials is None:
        bad.append("trials")
    seed = _num(doc, "seed", integer=True) if "seed" in doc else 0
    if seed is None:
        bad.append("seed")
    inst = _num(doc, "institution_belief", lo=0, hi=6, integer=True) if "institution_belief" in doc else None
    if "institution_belief" in doc and inst is None:
        bad.append("institution_belief")
    eps = _num(doc, "epsilon", lo=0, hi=6, integer=True) if "epsilon" in doc else 0
    if eps is None:
        bad.append("epsilon")
    if bad:
        raise ConfigError(bad)
    return graph, tau, msg, trials, seed, inst, eps


def parse_homophily_config(doc: dict):
    """Homophily config: graph + repetitions, seed [, normalization]."""
    if not isinstance(doc, dict):
        raise ConfigError(["<document>"])
    bad: list[str] = []
    _unknown_keys(doc, {"graph", "repetitions", "seed", "normalization"}, "config", bad)
    graph = parse_graph_spec(doc.get("graph"), bad)
    reps = _num(doc, "repetitions", lo=1, integer=True) if "repetitions" in doc else 10
    if reps is None:
        bad.append("repetitions")
    seed = _num(doc, "seed", integer=True) if "seed" in doc else 0
    if seed is None:
        bad.append("seed")
    norm = doc.get("normalization", "per_edge")
    if norm not in ("per_edge", "eq11"):
        bad.append("normalization")
    if bad:
        raise ConfigError(bad)
    return graph, reps, seed, norm


def parse_graph_config(doc: dict) -> GraphSpec:
    """Graph-generation config: graph spec + seed."""
    if not isinstance(doc, dict):
        raise ConfigError(["<document>"])
    bad: list[str] = []
    _unknown_keys(doc, {"graph", "seed"}, "config", bad)
    graph = parse_graph_spec(doc.get("graph"), bad)
    seed = _num(doc, "seed", integer=True) if "seed" in doc else 0
    if seed is None:
        bad.append("seed")
    if bad:
        raise ConfigError(bad)
    return graph.with_seed(seed)


def parse_model_config(doc: dict) -> ContagionModel:
    """Model-only config document, e.g. for beta-table export."""
    if not isinstance(doc, dict):
        raise ConfigError(["<document>"])
    bad: list[str] = []
    _unknown_keys(doc, {"model"}, "config", bad)
    model = parse_model(doc.get("model"), bad)
    if bad:
        raise ConfigError(bad)
    return model
