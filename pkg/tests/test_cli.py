import io
import json
from contextlib import redirect_stderr, redirect_stdout

import pytest

from hyperlab import cli

from conftest import successor_doc

X_MINUS_2 = {"vars": 1, "terms": [[1, [1]], [-2, [0]]]}


def run_cli(argv):
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        status = cli.main(argv)
    return status, out.getvalue(), err.getvalue()


class TestDispatch:
    def test_zeno_time_example(self):
        status, out, err = run_cli(["zeno", "time", "--n", "3"])
        assert status == 0 and err == ""
        report = json.loads(out)
        assert report["seconds"] == 1.875
        assert report["seconds_exact"] == "15/8"

    def test_zeno_budget_reports_both_indices(self):
        status, out, _ = run_cli(["zeno", "budget", "--seconds", "1.875"])
        report = json.loads(out)
        assert report["largest_step_index"] == 3
        status, out, _ = run_cli(["zeno", "budget", "--seconds", "64"])
        report = json.loads(out)
        assert report["largest_step_index"] == "unbounded"
        assert report["decelerated_step_index"] == 6

    def test_zeno_lamp(self):
        status, out, _ = run_cli(["zeno", "lamp", "--t", "0.5"])
        assert json.loads(out)["state"] == "on"
        status, out, _ = run_cli(["zeno", "lamp", "--t", "2"])
        assert json.loads(out)["state"] == "undefined"

    def test_zeno_halting(self, write_json):
        path = write_json("machine.json", successor_doc())
        status, out, _ = run_cli(["zeno", "halting", path, "--input", "11", "--fuel", "100"])
        report = json.loads(out)
        assert report["flag"] == 1 and report["elapsed_seconds"] < 2

    def test_tm_run(self, write_json):
        path = write_json("machine.json", successor_doc())
        status, out, _ = run_cli(["tm", "run", path, "--input", "111", "--fuel", "50"])
        report = json.loads(out)
        assert report["outcome"] == "halted"
        assert report["tape"] == "1111"

    def test_tm_run_with_trace(self, write_json):
        path = write_json("machine.json", successor_doc())
        status, out, _ = run_cli(["tm", "run", path, "--input", "1", "--trace"])
        report = json.loads(out)
        assert [c["state"] for c in report["trace"]][-1] == "done"

    def test_tae_goldbach(self):
        status, out, _ = run_cli(["tae", "goldbach", "--horizon", "100"])
        report = json.loads(out)
        assert report["final_verdict"] is True and report["mind_changes"] == 0

    def test_tae_ashby_with_simulation(self):
        status, out, _ = run_cli([
            "tae", "ashby", "--wheels", "4", "--p", "0.5", "--strategy", "2",
            "--simulate", "--trials", "2000", "--seed", "5"])
        report = json.loads(out)
        assert report["expected_seconds"] == 8.0
        assert abs(report["simulated_mean_seconds"] - 8.0) \
            <= 4 * report["simulated_standard_error"]
        assert report["quoted_reference"]["asserted"] is False

    def test_tae_bogosort(self):
        status, out, _ = run_cli(["tae", "bogosort", "--len", "4", "--seed", "3"])
        report = json.loads(out)
        assert sorted(report["input"]) == report["sorted"]
        assert report["tries"] >= 1

    def test_limits_report(self):
        status, out, _ = run_cli(["limits", "--symbols", "8", "--power", "1"])
        report = json.loads(out)
        assert report["max_frequency_from_alphabet_hz"] > 0
        assert report["relative_gap"] < 0.005

    def test_enum_commands(self):
        status, out, _ = run_cli(["enum", "decode", "--index", "4"])
        assert json.loads(out)["a"] == 1
        status, out, _ = run_cli(["enum", "encode", "--a", "1", "--b", "1"])
        assert json.loads(out)["index"] == 4
        status, out, _ = run_cli(["enum", "list", "--count", "5"])
        assert len(json.loads(out)) == 5

    def test_aqc_solve(self, write_json):
        path = write_json("poly.json", X_MINUS_2)
        status, out, _ = run_cli([
            "aqc", "solve", path, "--cutoff", "4", "--time", "50", "--dt", "0.01",
            "--shots", "500", "--seed", "2"])
        report = json.loads(out)
        assert report["verdict"] == "solvable-with-witness"
        assert report["witness"] == [2]

    def test_aqc_oracle_only(self, write_json):
        path = write_json("poly.json", X_MINUS_2)
        status, out, _ = run_cli(["aqc", "solve", path, "--cutoff", "4", "--oracle-only"])
        report = json.loads(out)
        assert report["ground_energy"] == 0
        assert report["minimizers"] == [[2]]


class TestErrors:
    def test_domain_error_exits_one_with_structured_stderr(self):
        status, out, err = run_cli(["limits", "--symbols", "0"])
        assert status == 1 and out == ""
        payload = json.loads(err)
        assert payload["error"] == "domain-error"

    def test_missing_file_exits_one(self):
        status, _, err = run_cli(["aqc", "solve", "does-not-exist.json", "--cutoff", "2"])
        assert status == 1
        assert json.loads(err)["error"] == "io-error"

    def test_unknown_flag_exits_two(self):
        with pytest.raises(SystemExit) as exit_info:
            run_cli(["zeno", "time", "--bogus", "3"])
        assert exit_info.value.code == 2

    def test_invalid_machine_document(self, write_json):
        path = write_json("machine.json", {"blank": "_"})
        status, _, err = run_cli(["tm", "run", path])
        assert status == 1
        assert json.loads(err)["error"] == "validation-error"

    def test_bad_thread_env(self, monkeypatch):
        monkeypatch.setenv("HYPERLAB_THREADS", "zero")
        status, _, err = run_cli(["zeno", "time", "--n", "1"])
        assert status == 1
        assert json.loads(err)["error"] == "configuration-error"


class TestDeterminism:
    COMMANDS = [
        ["tae", "ashby", "--wheels", "6", "--p", "0.5", "--strategy", "3",
         "--simulate", "--trials", "5000", "--seed", "11"],
        ["tae", "bogosort", "--len", "5", "--seed", "11"],
        ["enum", "list", "--count", "20"],
        ["zeno", "time", "--n", "10"],
    ]

    @pytest.mark.parametrize("argv", COMMANDS, ids=lambda a: a[1])
    def test_same_invocation_is_byte_identical(self, argv):
        first = run_cli(argv)
        second = run_cli(argv)
        assert first == second
        assert first[0] == 0

    def test_csv_output_to_file(self, tmp_path):
        target = tmp_path / "report.csv"
        argv = ["--format", "csv", "--output", str(target),
                "tae", "ashby", "--wheels", "2", "--p", "0.5", "--strategy", "1"]
        status, out, _ = run_cli(argv)
        assert status == 0 and out == ""
        first = target.read_bytes()
        header = first.decode().splitlines()[0].split(",")
        assert header == [
            "command", "wheels", "p", "strategy", "expected_seconds",
            "expected_log2", "formula", "quoted_reference.case1_log2_seconds",
            "quoted_reference.case2_seconds", "quoted_reference.case3",
            "quoted_reference.asserted"]
        run_cli(argv)
        assert target.read_bytes() == first

    def test_global_seed_flows_to_subcommand(self):
        a = run_cli(["--seed", "9", "tae", "bogosort", "--len", "5"])
        b = run_cli(["tae", "bogosort", "--len", "5", "--seed", "9"])
        assert json.loads(a[1]) == json.loads(b[1])
