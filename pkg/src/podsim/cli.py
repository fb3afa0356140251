"""Command-line front end.

Subcommands::

    podsim run <config|preset>     simulate a run config, write trace CSV + summary
    podsim suite <name>            run a named suite (figures, beta-selection,
                                   table1, table2, homophily)
    podsim graph <config>          generate a graph, persist it, print stats
    podsim beta-table <config>     export a cognitive kernel's 7x7 table as CSV
    podsim census <config>         bounded-distance path census, CSV output
    podsim homophily <config>      per-edge homophily over repeated seeds

``run`` accepts either a path to a JSON config or the name of a shipped
preset (see podsim/presets/).  Failures exit nonzero after printing one
machine-readable JSON error line to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from importlib import resources
from pathlib import Path

from podsim.config import (
    ConfigError,
    load_run_config,
    parse_census_config,
    parse_graph_config,
    parse_homophily_config,
    parse_model_config,
    parse_run_config,
)
from podsim.contagion import beta_table_csv
from podsim.engine import run_batch
from podsim.graphs import generate, homophily
from podsim.paths import path_census
from podsim.suites import SUITE_NAMES, atomic_write, run_suite, summarize


def _fail(code: str, message: str, **extra) -> int:
    sys.stderr.write(json.dumps({"error": code, "message": message, **extra}) + "\n")
    return 1


def preset_path(name: str) -> Path | None:
    ref = resources.files("podsim") / "presets" / f"{name}.json"
    return Path(str(ref)) if ref.is_file() else None


def _load_json(path: Path):
    with open(path) as fh:
        return json.load(fh)


def _resolve_config(arg: str) -> Path | None:
    p = Path(arg)
    if p.is_file():
        return p
    return preset_path(arg)


def cmd_run(args) -> int:
    path = _resolve_config(args.config)
    if path is None:
        return _fail("not_found", f"no config file or preset named {args.config!r}")
    try:
        cfg = load_run_config(path)
    except ConfigError as e:
        return _fail("schema", str(e), fields=e.fields)
    except (OSError, json.JSONDecodeError) as e:
        return _fail("io", f"cannot read config {path}: {e}")
    if args.seed is not None:
        cfg = type(cfg)(**{**cfg.__dict__, "seed": args.seed})
    trace = run_batch(
        cfg.graph,
        cfg.model,
        cfg.schedule,
        cfg.T,
        cfg.repetitions,
        institution_belief=cfg.institution_belief,
        epsilon=cfg.epsilon,
        seed=cfg.seed,
    )
    out = Path(args.out)
    stem = path.stem
    trace_path = out / f"{stem}_trace.csv"
    summary_path = out / f"{stem}_summary.json"
    atomic_write(trace_path, trace.to_csv())
    atomic_write(summary_path, json.dumps(summarize(trace), indent=2) + "\n")
    print(trace_path)
    print(summary_path)
    return 0


def cmd_suite(args) -> int:
    if args.name not in SUITE_NAMES:
        return _fail(
            "usage", f"unknown suite {args.name!r}", choices=list(SUITE_NAMES)
        )
    out = Path(args.out) / args.name
    kwargs = {"seed": args.seed} if args.seed is not None else {}
    run_suite(args.name, out, workers=args.workers, **kwargs)
    print(out)
    return 0


def cmd_graph(args) -> int:
    try:
        doc = _load_json(Path(args.config))
        spec = parse_graph_config(doc)
    except ConfigError as e:
        return _fail("schema", str(e), fields=e.fields)
    except (OSError, json.JSONDecodeError) as e:
        return _fail("io", str(e))
    if args.seed is not None:
        spec = spec.with_seed(args.seed)
    g = generate(spec)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    path = out / f"{Path(args.config).stem}_graph.txt"
    atomic_write(path, g.to_text())
    h = homophily(g, "per_edge") if g.edge_count else float("nan")
    print(f"nodes {g.n} edges {g.edge_count} per_edge_homophily {h:.4f}")
    print(path)
    return 0


def cmd_beta_table(args) -> int:
    try:
        doc = _load_json(Path(args.config))
        model = parse_model_config(doc)
        csv_text = beta_table_csv(model)
    except ConfigError as e:
        return _fail("schema", str(e), fields=e.fields)
    except ValueError as e:
        return _fail("unsupported_model", str(e))
    except (OSError, json.JSONDecodeError) as e:
        return _fail("io", str(e))
    out = Path(args.out)
    path = out / f"{Path(args.config).stem}_beta_table.csv"
    atomic_write(path, csv_text)
    print(path)
    return 0


def cmd_census(args) -> int:
    try:
        doc = _load_json(Path(args.config))
        graph, tau, msg, trials, seed, inst, eps = parse_census_config(doc)
    except ConfigError as e:
        return _fail("schema", str(e), fields=e.fields)
    except (OSError, json.JSONDecodeError) as e:
        return _fail("io", str(e))
    if args.seed is not None:
        seed = args.seed
    row = path_census(
        graph, tau=tau, msg_level=msg, trials=trials, seed=seed,
        institution_belief=inst, epsilon=eps,
    )
    out = Path(args.out)
    path = out / f"{Path(args.config).stem}_census.csv"
    atomic_write(path, "graph_type,tau,b_u,proportion\n" + "\n".join(row.to_csv_rows()) + "\n")
    print(path)
    return 0


def cmd_homophily(args) -> int:
    try:
        doc = _load_json(Path(args.config))
        graph, reps, seed, norm = parse_homophily_config(doc)
    except ConfigError as e:
        return _fail("schema", str(e), fields=e.fields)
    except (OSError, json.JSONDecodeError) as e:
        return _fail("io", str(e))
    if args.seed is not None:
        seed = args.seed
    values = [homophily(generate(graph, seed=seed + r), norm) for r in range(reps)]
    out = Path(args.out)
    path = out / f"{Path(args.config).stem}_homophily.csv"
    rows = ["graph_type,seed,value"] + [
        f"{graph.kind},{seed + r},{v:.6f}" for r, v in enumerate(values)
    ]
    atomic_write(path, "\n".join(rows) + "\n")
    mean = sum(values) / len(values)
    print(f"{norm} homophily mean {mean:.4f} over {reps} seeds")
    print(path)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="podsim",
        description="belief-contagion simulation and analysis",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--out", default="out", help="output directory (default: ./out)")
        p.add_argument("--seed", type=int, default=None, help="override the config/root seed")
        p.add_argument("--workers", type=int, default=1, help="parallel runs (suites)")
        p.add_argument("--format", choices=["csv"], default="csv")

    p_run = sub.add_parser("run", help="execute one run config or preset")
    p_run.add_argument("config", help="path to JSON config, or preset name")
    common(p_run)
    p_run.set_defaults(func=cmd_run)

    p_suite = sub.add_parser("suite", help="run a named experiment suite")
    p_suite.add_argument("name", help=f"one of: {', '.join(SUITE_NAMES)}")
    common(p_suite)
    p_suite.set_defaults(func=cmd_suite)

    for name, func, help_text in (
        ("graph", cmd_graph, "generate and persist a graph"),
        ("beta-table", cmd_beta_table, "export a cognitive kernel's table"),
        ("census", cmd_census, "bounded-distance path census"),
        ("homophily", cmd_homophily, "homophily over repeated seeds"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("config", help="path to JSON config")
        common(p)
        p.set_defaults(func=func)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ValueError as e:
        return _fail("invalid", str(e))


if __name__ == "__main__":
    sys.exit(main())
