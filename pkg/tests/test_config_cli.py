"""Config validation and the command-line surface."""

import json

import pytest

from podsim.cli import main, preset_path
from podsim.config import (
    ConfigError,
    parse_model,
    parse_run_config,
    parse_schedule,
)
from podsim.contagion import DCC, SigmoidCognitive, SimpleContagion
from podsim.graphs import SocialGraph, homophily
from podsim.schedule import GradualSchedule, SplitSchedule

GOOD = {
    "graph": {"type": "er", "n": 120, "rho": 0.05},
    "model": {"type": "simple", "p": 0.15},
    "schedule": {"type": "single", "level": 6},
    "T": 10,
    "institution_belief": 6,
    "epsilon": 0,
    "repetitions": 2,
    "seed": 7,
}


def write_json(path, doc):
    path.write_text(json.dumps(doc))
    return str(path)


class TestRunConfig:
    def test_valid_document(self):
        cfg = parse_run_config(GOOD)
        assert cfg.graph.kind == "er"
        assert cfg.model == SimpleContagion(0.15)
        assert cfg.T == 10
        assert cfg.seed == 7

    def test_defaults(self):
        doc = {k: v for k, v in GOOD.items() if k in ("graph", "model", "schedule", "T")}
        cfg = parse_run_config(doc)
        assert cfg.institution_belief == 6
        assert cfg.epsilon == 0
        assert cfg.repetitions == 1
        assert cfg.seed == 0

    def test_out_of_range_rho_named(self):
        doc = dict(GOOD, graph={"type": "er", "n": 120, "rho": 1.5})
        with pytest.raises(ConfigError) as err:
            parse_run_config(doc)
        assert err.value.fields == ["graph.rho"]

    def test_all_offenders_reported_at_once(self):
        doc = dict(GOOD, graph={"type": "er", "n": 0, "rho": 2}, T=-1)
        with pytest.raises(ConfigError) as err:
            parse_run_config(doc)
        assert set(err.value.fields) == {"graph.n", "graph.rho", "T"}

    def test_unknown_keys_rejected(self):
        doc = dict(GOOD, extra=1)
        with pytest.raises(ConfigError) as err:
            parse_run_config(doc)
        assert "config.extra" in err.value.fields


class TestModelParsing:
    def test_dcc_alias(self):
        assert parse_model({"type": "dcc"}, []) == DCC

    def test_preset_shorthand(self):
        model = parse_model({"type": "sigmoid", "preset": "stubborn"}, [])
        assert model == SigmoidCognitive(alpha=4.0, gamma=2.0)

    def test_unknown_preset_flagged(self):
        bad = []
        parse_model({"type": "sigmoid", "preset": "credulous"}, bad)
        assert bad == ["model.preset"]

    def test_bad_probability_flagged(self):
        bad = []
        parse_model({"type": "simple", "p": 1.0}, bad)
        assert bad == ["model.p"]


class TestScheduleParsing:
    def test_split(self):
        sched = parse_schedule(
            {"type": "split", "first": 6, "second": 0, "switch_tick": 50}, []
        )
        assert sched == SplitSchedule(6, 0, 50)

    def test_gradual_defaults(self):
        assert parse_schedule({"type": "gradual"}, []) == GradualSchedule(6, 0, 10)

    def test_explicit_levels(self):
        sched = parse_schedule({"type": "explicit", "levels": {"1": [4, 3]}}, [])
        assert sched.levels_by_tick == {1: (4, 3)}

    def test_bad_level_flagged(self):
        bad = []
        parse_schedule({"type": "single", "level": 9}, bad)
        assert bad == ["schedule.level"]


class TestCli:
    def test_run_writes_trace_and_summary(self, tmp_path, capsys):
        cfg = write_json(tmp_path / "small.json", GOOD)
        assert main(["run", cfg, "--out", str(tmp_path / "out")]) == 0
        trace = (tmp_path / "out" / "small_trace.csv").read_text()
        lines = trace.strip().split("\n")
        assert len(lines) == 12  # header + T+1
        summary = json.loads((tmp_path / "out" / "small_summary.json").read_text())
        assert len(summary["final_mean"]) == 7

    def test_rerun_byte_identical(self, tmp_path):
        cfg = write_json(tmp_path / "small.json", dict(GOOD, repetitions=1))
        main(["run", cfg, "--out", str(tmp_path / "a")])
        main(["run", cfg, "--out", str(tmp_path / "b")])
        assert (tmp_path / "a" / "small_trace.csv").read_bytes() == (
            tmp_path / "b" / "small_trace.csv"
        ).read_bytes()

    def test_schema_error_is_machine_readable(self, tmp_path, capsys):
        cfg = write_json(
            tmp_path / "bad.json", dict(GOOD, graph={"type": "er", "n": 120, "rho": 1.5})
        )
        assert main(["run", cfg, "--out", str(tmp_path)]) == 1
        err = json.loads(capsys.readouterr().err.strip())
        assert err["error"] == "schema"
        assert err["fields"] == ["graph.rho"]

    def test_missing_config_fails(self, tmp_path, capsys):
        assert main(["run", str(tmp_path / "nope.json"), "--out", str(tmp_path)]) == 1
        err = json.loads(capsys.readouterr().err.strip())
        assert err["error"] == "not_found"

    def test_preset_resolves_by_name(self):
        assert preset_path("er-dcc-gradual") is not None
        assert preset_path("no-such-preset") is None

    def test_preset_run_sways_population_downward(self, tmp_path, capsys):
        # the gradual staircase walks every agent down to level 0
        assert main(["run", "er-dcc-gradual", "--out", str(tmp_path)]) == 0
        trace = (tmp_path / "er-dcc-gradual_trace.csv").read_text().strip().split("\n")
        final = trace[-1].split(",")
        assert float(final[1]) >= 0.99  # level_0_mean

    def test_graph_command_round_trip(self, tmp_path, capsys):
        cfg = write_json(
            tmp_path / "g.json", {"graph": {"type": "ws", "n": 60, "k": 3, "rho": 0.4}, "seed": 5}
        )
        assert main(["graph", cfg, "--out", str(tmp_path)]) == 0
        out = capsys.readouterr().out.strip().split("\n")
        assert out[0].startswith("nodes 60 edges 180 ")
        reloaded = SocialGraph.load(tmp_path / "g_graph.txt")
        printed = float(out[0].split()[-1])
        assert homophily(reloaded, "per_edge") == pytest.approx(printed, abs=5e-5)

    def test_beta_table_command(self, tmp_path):
        cfg = write_json(tmp_path / "m.json", {"model": {"type": "dcc"}})
        assert main(["beta-table", cfg, "--out", str(tmp_path)]) == 0
        rows = (tmp_path / "m_beta_table.csv").read_text().strip().split("\n")
        assert len(rows) == 7
        assert rows[0].split(",")[1] == "0.982"

    def test_beta_table_rejects_simple_model(self, tmp_path, capsys):
        cfg = write_json(tmp_path / "m.json", {"model": {"type": "simple", "p": 0.15}})
        assert main(["beta-table", cfg, "--out", str(tmp_path)]) == 1
        err = json.loads(capsys.readouterr().err.strip())
        assert err["error"] == "unsupported_model"

    def test_census_command(self, tmp_path):
        cfg = write_json(
            tmp_path / "c.json",
            {"graph": {"type": "er", "n": 40, "rho": 0.15}, "tau": 1, "msg_level": 6,
             "trials": 5, "seed": 3},
        )
        assert main(["census", cfg, "--out", str(tmp_path)]) == 0
        rows = (tmp_path / "c_census.csv").read_text().strip().split("\n")
        assert rows[0] == "graph_type,tau,b_u,proportion"
        assert len(rows) == 8

    def test_homophily_command(self, tmp_path, capsys):
        cfg = write_json(
            tmp_path / "h.json",
            {"graph": {"type": "er", "n": 80, "rho": 0.1}, "repetitions": 3, "seed": 2},
        )
        assert main(["homophily", cfg, "--out", str(tmp_path)]) == 0
        rows = (tmp_path / "h_homophily.csv").read_text().strip().split("\n")
        assert len(rows) == 4

    def test_unknown_suite_fails_with_usage_error(self, tmp_path, capsys):
        assert main(["suite", "everything", "--out", str(tmp_path)]) == 1
        err = json.loads(capsys.readouterr().err.strip())
        assert err["error"] == "usage"

    def test_table1_suite(self, tmp_path):
        assert main(["suite", "table1", "--out", str(tmp_path)]) == 0
        table = (tmp_path / "table1" / "dcc_beta_table.csv").read_text()
        assert len(table.strip().split("\n")) == 7
