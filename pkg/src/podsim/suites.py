"""Named experiment suites and batch orchestration.

Each suite writes CSV artifacts under an output directory.  A suite's
root seed fans out by a counter: condition number c (0-based, in listed
order) runs its repetitions on seeds ``root + c * repetitions + rep``,
so any single condition reproduces in isolation.  Files are written to a
temp name and renamed, so interrupted runs never leave partial outputs.
"""

from __future__ import annotations

import json
import os
import tempfile
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from podsim.contagion import DCC, ComplexContagion, SimpleContagion, beta_table_csv
from podsim.contagion import LINEAR_PRESETS, SIGMOID_PRESETS, THRESHOLD_PRESETS
from podsim.engine import BatchTrace, run_batch
from podsim.graphs import GraphSpec, generate, homophily
from podsim.paths import path_census
from podsim.schedule import GradualSchedule, SingleSchedule, SplitSchedule

DEFAULT_SEED = 1000
SUITE_NAMES = ("figures", "beta-selection", "table1", "table2", "homophily")

# Convergence: first tick at which the dominant level's mean fraction
# exceeds this threshold ("pervaded the entire network").
CONVERGENCE_THRESHOLD = 0.99

GRAPHS = {
    "er": GraphSpec(kind="er", n=500, rho=0.05),
    "ws": GraphSpec(kind="ws", n=500, k=5, rho=0.5),
    "ba": GraphSpec(kind="ba", n=500, m=3),
    "mag": GraphSpec(kind="mag", n=500),
}
MODELS = {
    "simple": SimpleContagion(0.15),
    "complex": ComplexContagion(0.35),
    "dcc": DCC,
}
SCHEDULES = {
    "single": SingleSchedule(6),
    "split": SplitSchedule(6, 0, 50),
    "gradual": GradualSchedule(6, 0, 10),
}


def atomic_write(path, text: str) -> None:
    """Write text then rename into place, so readers never see a partial file."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def summarize(trace: BatchTrace, believed: list[int] | None = None) -> dict:
    """Final-tick stats, convergence tick, and believed-message totals."""
    final_mean = trace.mean[-1]
    dominant = int(np.argmax(final_mean))
    convergence = None
    for t in range(trace.mean.shape[0]):
        if trace.mean[t, dominant] > CONVERGENCE_THRESHOLD:
            convergence = t
            break
    out = {
        "final_mean": [round(float(x), 6) for x in final_mean],
        "final_var": [round(float(x), 6) for x in trace.var[-1]],
        "dominant_level": dominant,
        "convergence_tick": convergence,
    }
    if believed is not None:
        out["messages_believed"] = believed
        out["messages_believed_mean"] = float(np.mean(believed))
    return out


@dataclass(frozen=True)
class Condition:
    """One cell of a suite grid: graph x model x schedule at a seed block."""

    name: str
    graph: GraphSpec
    model: object
    schedule: object
    T: int
    repetitions: int
    seed: int
    institution_belief: int = 6
    epsilon: int = 0


def run_condition(cond: Condition) -> tuple[str, BatchTrace, dict]:
    trace = run_batch(
        cond.graph,
        cond.model,
        cond.schedule,
        cond.T,
        cond.repetitions,
        institution_belief=cond.institution_belief,
        epsilon=cond.epsilon,
        seed=cond.seed,
    )
    return cond.name, trace, summarize(trace)


def _execute(conditions: list[Condition], out_dir, workers: int = 1) -> dict:
    out_dir = Path(out_dir)
    summaries = {}
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run_condition, conditions))
    else:
        results = [run_condition(c) for c in conditions]
    for name, trace, summary in results:
        atomic_write(out_dir / f"{name}_trace.csv", trace.to_csv())
        summaries[name] = summary
    atomic_write(out_dir / "summary.json", json.dumps(summaries, indent=2) + "\n")
    return summaries


def figures_conditions(seed: int = DEFAULT_SEED, T: int = 100, repetitions: int = 10):
    """The full 4-topology x 3-model x 3-schedule grid."""
    conds = []
    i = 0
    for gname, gspec in GRAPHS.items():
        for mname, model in MODELS.items():
            for sname, sched in SCHEDULES.items():
                conds.append(
                    Condition(
                        name=f"{gname}-{mname}-{sname}",
                        graph=gspec,
                        model=model,
                        schedule=sched,
                        T=T,
                        repetitions=repetitions,
                        seed=seed + i * repetitions,
                    )
                )
                i += 1
    return conds


def suite_figures(out_dir, seed: int = DEFAULT_SEED, workers: int = 1) -> dict:
    return _execute(figures_conditions(seed), out_dir, workers)


def beta_selection_conditions(seed: int = DEFAULT_SEED, T: int = 100, repetitions: int = 10):
    """Nine kernel parameterizations on the smaller sparse random graph, split condition."""
    graph = GraphSpec(kind="er", n=250, rho=0.05)
    families = {
        "linear": LINEAR_PRESETS,
        "threshold": THRESHOLD_PRESETS,
        "sigmoid": SIGMOID_PRESETS,
    }
    conds = []
    i = 0
    for fam, presets in families.items():
        for temperament, model in presets.items():
            conds.append(
                Condition(
                    name=f"er250-{fam}-{temperament}-split",
                    graph=graph,
                    model=model,
                    schedule=SCHEDULES["split"],
                    T=T,
                    repetitions=repetitions,
                    seed=seed + i * repetitions,
                )
            )
            i += 1
    return conds


def suite_beta_selection(out_dir, seed: int = DEFAULT_SEED, workers: int = 1) -> dict:
    return _execute(beta_selection_conditions(seed), out_dir, workers)


def suite_table1(out_dir, seed: int = DEFAULT_SEED, workers: int = 1) -> dict:
    """Adoption-probability table of the stubborn sigmoid kernel, as CSV."""
    out_dir = Path(out_dir)
    atomic_write(out_dir / "dcc_beta_table.csv", beta_table_csv(DCC))
    return {"dcc_beta_table": "written"}


def suite_table2(
    out_dir, seed: int = DEFAULT_SEED, workers: int = 1, trials: int = 100
) -> dict:
    """Bounded-distance path census for every topology at tau = 1 and 2."""
    out_dir = Path(out_dir)
    rows = ["graph_type,tau,b_u,proportion"]
    results = {}
    for gname, gspec in GRAPHS.items():
        for tau in (1, 2):
            census = path_census(gspec, tau=tau, msg_level=6, trials=trials, seed=seed)
            rows.extend(census.to_csv_rows())
            results[f"{gname}-tau{tau}"] = list(census.proportions)
    atomic_write(out_dir / "path_census.csv", "\n".join(rows) + "\n")
    return results


def suite_homophily(
    out_dir, seed: int = DEFAULT_SEED, workers: int = 1, repetitions: int = 10
) -> dict:
    """Per-edge homophily of sparse random vs. belief-siloed graphs, 10 seeds each."""
    out_dir = Path(out_dir)
    rows = ["graph_type,seed,per_edge,eq11"]
    results = {}
    for gname in ("er", "mag"):
        gspec = GRAPHS[gname]
        per_edge = []
        for r in range(repetitions):
            g = generate(gspec, seed=seed + r)
            pe = homophily(g, "per_edge")
            rows.append(f"{gname},{seed + r},{pe:.6f},{homophily(g, 'eq11'):.6f}")
            per_edge.append(pe)
        results[gname] = {
            "mean_per_edge": float(np.mean(per_edge)),
            "var_per_edge": float(np.var(per_edge)),
        }
    atomic_write(out_dir / "homophily.csv", "\n".join(rows) + "\n")
    atomic_write(out_dir / "homophily_summary.json", json.dumps(results, indent=2) + "\n")
    return results


SUITES = {
    "figures": suite_figures,
    "beta-selection": suite_beta_selection,
    "table1": suite_table1,
    "table2": suite_table2,
    "homophily": suite_homophily,
}


def run_suite(name: str, out_dir, seed: int = DEFAULT_SEED, workers: int = 1) -> dict:
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITE_NAMES)}")
    return SUITES[name](out_dir, seed=seed, workers=workers)
