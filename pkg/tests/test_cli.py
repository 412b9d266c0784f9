import io
import json
import textwrap
from contextlib import redirect_stdout

import pytest

from galspin.config import SUITE_ORDER, load_config, parse_config
from galspin.cli import main
from galspin.errors import ConfigError
from galspin.report import (
    emit_json,
    emit_text,
    exit_code,
    parse_json_report,
    strip_timings,
)
from galspin.suites import run
from galspin.verdict import Status, Verdict

SMALL_CONFIG = textwrap.dedent(
    """
    [run]
    suites = counterexample nogo
    seed = 42

    [lattice]
    dimension = 1
    points_per_side = 4
    side_length = 1

    [field]
    mass = 1
    spin = 0
    alpha = 1+0i
    beta = 1/2+0i

    [samples]
    alpha_beta_pairs = 3
    hermiticity_samples = 10
    """
)


def write_config(tmp_path, text, name="suite.cfg"):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def run_cli(argv):
    buffer = io.StringIO()
    with redirect_stdout(buffer):
        code = main(argv)
    return code, buffer.getvalue()


class TestConfigParsing:
    def test_parse_round(self):
        config = parse_config(SMALL_CONFIG)
        assert config.suites == ("counterexample", "nogo")
        assert config.seed == 42
        assert config.lattice.points_per_side == 4
        assert config.samples["alpha_beta_pairs"] == 3
        assert config.samples["cocycle_pairs"] == 1000  # default preserved

    def test_all_expands_in_order(self):
        config = parse_config(
            SMALL_CONFIG.replace("suites = counterexample nogo", "suites = all")
        )
        assert config.suites == SUITE_ORDER

    def test_empty_suites(self):
        config = parse_config(
            SMALL_CONFIG.replace("suites = counterexample nogo", "suites =")
        )
        assert config.suites == ()

    def test_unknown_suite_has_line(self):
        with pytest.raises(ConfigError, match="line 3"):
            parse_config(
                SMALL_CONFIG.replace("counterexample nogo", "counterexample nope")
            )

    def test_bad_rational_has_line_and_field(self):
        broken = SMALL_CONFIG.replace("mass = 1", "mass = one")
        with pytest.raises(ConfigError, match=r"\[field\] mass"):
            parse_config(broken)

    def test_missing_seed(self):
        broken = SMALL_CONFIG.replace("seed = 42", "")
        with pytest.raises(ConfigError, match="seed"):
            parse_config(broken)

    def test_unknown_key(self):
        with pytest.raises(ConfigError, match="unknown key"):
            parse_config(SMALL_CONFIG + "\n[run]\nbogus = 1\n")

    def test_odd_lattice_rejected(self):
        broken = SMALL_CONFIG.replace("points_per_side = 4", "points_per_side = 5")
        with pytest.raises(ConfigError):
            parse_config(broken)


class TestRun:
    def test_empty_suites_empty_report(self):
        config = parse_config(
            SMALL_CONFIG.replace("suites = counterexample nogo", "suites =")
        )
        verdicts = run(config)
        assert verdicts == []
        assert exit_code(verdicts) == 0

    def test_small_run_passes(self):
        config = parse_config(SMALL_CONFIG)
        verdicts = run(config)
        assert verdicts
        assert all(v.passed for v in verdicts)
        labels = [v.label for v in verdicts]
        assert "S2-counterexample" in labels
        assert "S5-doubled-mass" in labels

    def test_verdicts_tagged_with_suite(self):
        config = parse_config(SMALL_CONFIG)
        for verdict in run(config):
            assert verdict.details["suite"] in SUITE_ORDER


class TestReports:
    def test_json_roundtrip(self):
        config = parse_config(SMALL_CONFIG)
        verdicts = run(config)
        payload, parsed = parse_json_report(emit_json(verdicts, config))
        assert payload["config"]["seed"] == 42
        assert parsed == verdicts

    def test_text_summary_counts_suites(self):
        config = parse_config(SMALL_CONFIG)
        verdicts = run(config)
        text = emit_text(verdicts, config)
        assert "2/2 suites passed" in text

    def test_exit_code_contract(self):
        ok = Verdict("X", Status.PASS)
        bad = Verdict("Y", Status.FAIL, witness={"w": 1})
        assert exit_code([ok]) == 0
        assert exit_code([ok, bad]) == 1


class TestCliProcess:
    def test_all_pass_run(self, tmp_path):
        path = write_config(tmp_path, SMALL_CONFIG)
        code, output = run_cli(["run", "--config", path])
        assert code == 0
        assert "suites passed" in output

    def test_json_determinism(self, tmp_path):
        path = write_config(tmp_path, SMALL_CONFIG)
        code1, out1 = run_cli(["run", "--config", path, "--format", "json"])
        code2, out2 = run_cli(["run", "--config", path, "--format", "json"])
        assert code1 == code2 == 0
        assert strip_timings(out1) == strip_timings(out2)

    def test_seed_changes_report(self, tmp_path):
        path = write_config(tmp_path, SMALL_CONFIG)
        _, out1 = run_cli(["run", "--config", path, "--format", "json"])
        _, out2 = run_cli(
            ["run", "--config", path, "--format", "json", "--seed", "43"]
        )
        assert json.loads(out1)["config"]["seed"] == 42
        assert json.loads(out2)["config"]["seed"] == 43

    def test_suite_override(self, tmp_path):
        path = write_config(tmp_path, SMALL_CONFIG)
        code, output = run_cli(
            ["run", "--config", path, "--format", "json", "--suite", "nogo"]
        )
        assert code == 0
        payload = json.loads(output)
        assert payload["summary"]["suites"] == {"nogo": "PASS"}

    def test_mutant_table_config_fails(self, tmp_path):
        from fractions import Fraction
        from galspin.galilei import extended_galilei_table, format_table

        mutant = extended_galilei_table().with_bracket(
            "J1", "J2", {"J3": Fraction(2)}
        )
        table_path = tmp_path / "mutant.table"
        table_path.write_text(format_table(mutant))
        config_text = SMALL_CONFIG.replace(
            "suites = counterexample nogo", "suites = algebra"
        ) + f"\n[algebra]\ntable_file = {table_path}\n"
        path = write_config(tmp_path, config_text)
        code, output = run_cli(["run", "--config", path, "--format", "json"])
        assert code == 1
        payload = json.loads(output)
        statuses = {v["label"]: v["status"] for v in payload["verdicts"]}
        assert statuses["A'2-jacobi-extended"] == "FAIL"

    def test_malformed_config_exits_2(self, tmp_path):
        path = write_config(tmp_path, "not a config\n")
        code, _ = run_cli(["run", "--config", path])
        assert code == 2

    def test_missing_config_exits_2(self, tmp_path):
        code, _ = run_cli(["run", "--config", str(tmp_path / "absent.cfg")])
        assert code == 2

    def test_unknown_suite_flag_exits_2(self, tmp_path):
        path = write_config(tmp_path, SMALL_CONFIG)
        code, _ = run_cli(["run", "--config", path, "--suite", "nope"])
        assert code == 2

    def test_parallel_merge_is_deterministic(self, tmp_path):
        path = write_config(tmp_path, SMALL_CONFIG)
        _, sequential = run_cli(["run", "--config", path, "--format", "json"])
        _, parallel = run_cli(
            ["run", "--config", path, "--format", "json", "--parallel"]
        )
        strip = lambda text: strip_timings(
            json.dumps(
                {**json.loads(text), "config": None}, sort_keys=True, indent=2
            )
        )
        assert strip(sequential) == strip(parallel)
