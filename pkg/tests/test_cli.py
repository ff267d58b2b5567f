import json
from pathlib import Path

import pytest

from edimaging.cli import main

STATES = Path(__file__).resolve().parent.parent / "scripts" / "states"


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestChange:
    def test_reciprocal_engine(self, capsys):
        code, out, _ = run(
            capsys, "change", "--op", "edi-rcp", "--eta", "1",
            "--state", str(STATES / "b37.json"), "--evidence", "!q",
        )
        assert code == 0
        assert json.loads(out) == {
            "11": "0", "10": "0", "01": "23/50", "00": "27/50",
        }

    def test_conditioning_on_km(self, capsys):
        code, out, _ = run(
            capsys, "change", "--op", "bc",
            "--state", str(STATES / "km.json"), "--evidence", "book",
        )
        assert code == 0
        assert json.loads(out) == {"11": "0", "10": "1", "01": "0", "00": "0"}

    def test_undefined_conditioning_exits_one(self, capsys):
        code, _, err = run(
            capsys, "change", "--op", "bc",
            "--state", str(STATES / "b37.json"), "--evidence", "!q",
        )
        assert code == 1
        assert "ConditioningUndefined" in err

    def test_verbose_includes_gamma(self, capsys):
        code, out, _ = run(
            capsys, "change", "--op", "edi-rcp", "--eta", "1", "--verbose",
            "--state", str(STATES / "b37.json"), "--evidence", "!q",
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["gamma"] == "5/6"

    def test_iterated_change_prints_trajectory(self, capsys):
        code, out, _ = run(
            capsys, "change", "--op", "dct-upd", "--inner", "dfr",
            "--eta", "1/10", "--iterations", "2",
            "--state", str(STATES / "b37.json"), "--evidence", "!q",
        )
        assert code == 0
        steps = json.loads(out)
        assert steps[0]["01"] == "1/3"
        assert steps[1]["01"] == "43/96"

    def test_human_format(self, capsys):
        code, out, _ = run(
            capsys, "change", "--op", "edi-rcp", "--format", "human",
            "--state", str(STATES / "b37.json"), "--evidence", "!q",
        )
        assert code == 0
        assert "01  0.46" in out

    def test_syntax_error_exits_one(self, capsys):
        code, _, err = run(
            capsys, "change", "--op", "edi-rcp",
            "--state", str(STATES / "b37.json"), "--evidence", "!q &",
        )
        assert code == 1
        assert "FormulaSyntaxError" in err


class TestCheckWeights:
    def test_expected_properties_hold(self, capsys):
        code, _, _ = run(
            capsys, "check-weights", "--weight", "rcp", "--eta", "1",
            "--atoms", "2", "--expect",
            "inverse-distance,strict-inversity,equi-distance,faithfulness,relaxed",
        )
        assert code == 0

    def test_missing_property_exits_one(self, capsys):
        code, _, err = run(
            capsys, "check-weights", "--weight", "bc", "--atoms", "2",
            "--expect", "strict-inversity",
        )
        assert code == 1
        assert "strict-inversity" in err

    def test_difference_weight_report(self, capsys):
        code, out, _ = run(
            capsys, "check-weights", "--weight", "dfr", "--eta", "1/10000",
            "--atoms", "3", "--format", "json",
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["properties"]["strict-inversity"]["verdict"] \
            == "holds-on-suite"

    def test_named_atoms(self, capsys):
        code, out, _ = run(
            capsys, "check-weights", "--weight", "li", "--atoms", "q,r",
            "--format", "json",
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["properties"]["retention"]["verdict"] == "holds-on-suite"
        assert payload["properties"]["weak-inversity"]["verdict"] == "violated"


class TestPostulates:
    def test_revision_cores_exit_zero(self, capsys):
        code, out, _ = run(
            capsys, "postulates", "--suite", "revision", "--op", "dct-rev",
            "--atoms", "2", "--grid", "4",
        )
        assert code == 0
        assert "rev1" in out and "holds-on-suite" in out

    def test_update_cores_exit_zero(self, capsys):
        code, out, _ = run(
            capsys, "postulates", "--suite", "update", "--op", "cls-upd",
            "--atoms", "2",
        )
        assert code == 0

    def test_report_all_includes_violation_witness(self, capsys):
        code, out, _ = run(
            capsys, "postulates", "--suite", "update", "--op", "dct-upd",
            "--atoms", "2", "--report-all", "--format", "json",
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["postulates"]["upd2a"]["verdict"] == "violated"
        assert "witness" in payload["postulates"]["upd2a"]


class TestConverge:
    def test_writes_csv(self, capsys, tmp_path):
        out_path = tmp_path / "fig.csv"
        code, out, _ = run(
            capsys, "converge", "--weight", "rcp", "--eta", "1",
            "--atoms", "2", "--trials", "3", "--iterations", "4",
            "--seed", "7", "--out", str(out_path),
        )
        assert code == 0
        lines = out_path.read_text().splitlines()
        assert lines[0] == "iteration,mean_abs_diff"
        assert len(lines) == 5

    def test_missing_seed_is_usage_error(self, capsys):
        with pytest.raises(SystemExit) as err:
            main(["converge", "--weight", "rcp"])
        assert err.value.code == 2

    def test_repeat_runs_identical(self, capsys, tmp_path):
        argv = [
            "converge", "--weight", "dfr", "--eta", "1/10000",
            "--atoms", "2", "--trials", "4", "--iterations", "3",
            "--seed", "9",
        ]
        first = run(capsys, *argv, "--out", str(tmp_path / "a.csv"))
        second = run(capsys, *argv, "--out", str(tmp_path / "b.csv"))
        assert first[0] == second[0] == 0
        assert (tmp_path / "a.csv").read_bytes() == (tmp_path / "b.csv").read_bytes()
