import io
import json
import subprocess
import sys
from pathlib import Path
from contextlib import redirect_stderr, redirect_stdout

from elephantine import __version__, cli


def run_cli(argv):
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = cli.run(argv)
    return code, out.getvalue(), err.getvalue()


def run_json(argv):
    code, out, err = run_cli(argv)
    assert code == 0, err
    return json.loads(out)


def test_blowup_reproduces_known_chart_table():
    report = run_json([
        "blowup",
        "--type", "1/4(1,3,2,1)",
        "--weights", "1/4(1,3,2,1)",
        "--divisor", "x^2+y^2+z^3+u^2",
    ])
    result = report["result"]
    assert result["canonical_discrepancy"] == "3/4"
    assert result["divisor_weight"] == "1/2"
    assert result["pair_discrepancy"] == "1/4"
    assert [c["type"] for c in result["charts"]] == [
        "1/1(0,0,0,0)", "1/3(2,1,1,2)", "1/2(1,1,0,1)", "1/1(0,0,0,0)"
    ]
    assert [c["smooth"] for c in result["charts"]] == [True, False, False, True]
    # the z-chart action 1/2(1,1,0,1) fixes a curve: flagged non-isolated
    assert [c["isolated_action"] for c in result["charts"]] == [True, True, False, True]
    assert report["version"] == __version__
    assert report["command"] == "blowup"


def test_charts_subcommand():
    report = run_json(["charts", "--type", "1/2(1,1,1)", "--weights", "1/2(1,1,1)"])
    assert report["command"] == "charts"
    assert report["result"]["canonical_discrepancy"] == "1/2"
    assert len(report["result"]["charts"]) == 3
    assert "divisor" not in report["result"]


def test_duval_subcommand():
    report = run_json(["duval", "--germ", "x^2+y^3+z^4"])
    assert report["result"]["label"] == "E6"
    report = run_json(["duval", "--germ", "x^2+y^3+y*z^4+z^6"])
    assert report["result"]["verdict"] == "not_du_val"
    assert report["result"]["recommendation"] == {"weights": [3, 2, 1], "discrepancy": "-1"}


def test_milnor_subcommand():
    report = run_json(["milnor", "--germ", "x^2+y^3+z^5"])
    assert report["result"]["milnor_number"] == 8
    assert report["result"]["isolated"]
    report = run_json(["milnor", "--germ", "x^2+y^2*z"])
    assert report["result"]["milnor_number"] is None
    assert not report["result"]["isolated"]


def test_t1_subcommand():
    report = run_json(["t1", "--germ", "x^2+y^3+z^4"])
    assert report["result"]["dimension"] == 6
    assert report["result"]["basis"] == ["1", "y", "z", "y*z", "z^2", "y*z^2"]
    report = run_json(["t1", "--germ", "x^3+y^3+z^3", "--type", "1/2(1,1,1)"])
    assert report["result"]["character"] == 1
    assert report["result"]["quotient_dimension"] == 8
    table = {row["character"]: row["dimension"] for row in report["result"]["character_table"]}
    assert table == {0: 4, 1: 4}


def test_wps_subcommand_matches_inventory():
    report = run_json([
        "wps", "--weights", "1,2,3,5,5", "--degree", "15",
        "--equation", "x^15+x*y^7+z^5+w1^3+w2^3",
    ])
    result = report["result"]
    assert result["wellformed"]
    assert result["h0"] == 1
    assert result["elephant"]["equation"] == "z^5+w1^3+w2^3"
    assert result["elephant"]["weights"] == [2, 3, 5, 5]
    inventory = {(e["location"], e["type"], e["count"]) for e in result["inventory"]}
    assert ("vertex y", "1/2(1,1,1)", 1) in inventory
    assert ("stratum (w1,w2)", "1/5(1,2,3)", 3) in inventory


def test_wps_vars_in_weight_order_when_inference_fails():
    report = run_json([
        "wps", "--weights", "1,2,2,3,7", "--degree", "14",
        "--equation", "x^14+x^2*y1^6+w^2+y1^3*y2^4+y2^7+y1*z^4",
        "--vars", "x,y1,y2,z,w",
    ])
    assert report["result"]["wellformed"]
    code, out, err = run_cli([
        "wps", "--weights", "1,2,2,3,7", "--degree", "14",
        "--equation", "x^14+x^2*y1^6+w^2+y1^3*y2^4+y2^7+y1*z^4",
    ])
    # inference by first appearance puts w before y2: weighted degrees break
    assert code == 2


def test_wps_complete_intersection_mode():
    report = run_json(["wps", "--weights", "2,3,4,5,6,7", "--degree", "12,14"])
    assert report["result"]["anticanonical_degree"] == 1
    assert report["result"]["h0"] == 0
    assert report["warnings"]


def test_wps_batch_input_file(tmp_path):
    batch = tmp_path / "surfaces.txt"
    batch.write_text(
        "# corpus\n"
        "1,2,3,5,5 | 15 | x^15+x*y^7+z^5+w1^3+w2^3\n"
        "1,2,2,3,7 | 14 | x^14+x^2*y1^6+w^2+y1^3*y2^4+y2^7+y1*z^4 | x,y1,y2,z,w\n",
        encoding="utf-8",
    )
    code, out, err = run_cli(["wps", "--input-file", str(batch)])
    assert code == 0, err
    lines = [json.loads(line) for line in out.strip().splitlines()]
    assert len(lines) == 2
    assert lines[0]["result"]["h0"] == 1
    assert lines[1]["result"]["h0"] == 1


def test_exit_code_2_on_bad_input():
    for argv in (
        ["duval", "--germ", "x^2+@"],
        ["duval", "--germ", "x^2+q^2"],
        ["blowup", "--type", "1/4(1,3,2,1)", "--weights", "1/2(1,1,1)"],
        ["blowup", "--type", "nonsense", "--weights", "1/2(1,1,1)"],
        ["wps", "--weights", "1,2", "--degree", "3", "--equation", "x+y+z"],
        ["t1", "--germ", "x+y^2", "--type", "1/2(1,1,1)"],
    ):
        code, out, err = run_cli(argv)
        assert code == 2, argv
        assert err.strip()


def test_unknown_subcommand_is_input_error():
    code, _, _ = run_cli(["frobnicate"])
    assert code == 2


def test_pretty_flag_both_positions():
    compact = run_json(["duval", "--germ", "x^2+y^3+z^4"])
    code, out, _ = run_cli(["--pretty", "duval", "--germ", "x^2+y^3+z^4"])
    assert code == 0 and json.loads(out) == compact
    code, out, _ = run_cli(["duval", "--germ", "x^2+y^3+z^4", "--pretty"])
    assert code == 0 and json.loads(out) == compact
    assert out.count("\n") > 3


def test_module_entry_point_runs():
    proc = subprocess.run(
        [sys.executable, "-m", "elephantine", "milnor", "--germ", "x^2+y^2+z^2"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["result"]["milnor_number"] == 1


def test_console_output_is_deterministic():
    corpus = [
        ["duval", "--germ", "x^2+y^3+z^4"],
        ["blowup", "--type", "1/4(1,3,2,1)", "--weights", "1/4(1,3,2,1)",
         "--divisor", "x^2+y^2+z^3+u^2"],
        ["t1", "--germ", "x^3+y^3+z^3", "--type", "1/2(1,1,1)"],
        ["milnor", "--germ", "x^2+y^3+z^5"],
        ["wps", "--weights", "1,2,3,5,5", "--degree", "15",
         "--equation", "x^15+x*y^7+z^5+w1^3+w2^3"],
    ]
    for argv in corpus:
        first = run_cli(argv)
        second = run_cli(argv)
        assert first == second


def test_truncation_env_var_reaches_classifier(monkeypatch):
    monkeypatch.setenv("ELEPHANTINE_TRUNCATION", "14")
    code, out, err = run_cli(["duval", "--germ", "x^2+y^13+z^13"])
    assert code == 0
    assert json.loads(out)["result"]["verdict"] == "not_du_val"
    monkeypatch.delenv("ELEPHANTINE_TRUNCATION")
    code, out, err = run_cli(["duval", "--germ", "x^2+y^13+z^13"])
    assert code == 2  # default truncation 12 cannot decide this germ
    assert "truncation" in err or "retry" in err


def test_determinism_across_processes():
    # separate interpreters get different hash seeds; byte-identical output
    # proves nothing leaks through set or hash iteration order
    argv = [
        sys.executable, "-m", "elephantine", "wps",
        "--weights", "1,2,3,5,5", "--degree", "15",
        "--equation", "x^15+x*y^7+z^5+w1^3+w2^3",
    ]
    first = subprocess.run(argv, capture_output=True).stdout
    second = subprocess.run(argv, capture_output=True).stdout
    assert first and first == second


def test_batch_golden_corpus():
    corpus = Path(__file__).parent / "data" / "surfaces.txt"
    code, out, err = run_cli(["wps", "--input-file", str(corpus)])
    assert code == 0, err
    reports = [json.loads(line) for line in out.strip().splitlines()]
    assert len(reports) == 5
    assert [r["result"]["h0"] for r in reports] == [1, 1, 1, 5, 0]
    assert all(r["result"]["wellformed"] for r in reports)
    totals = []
    for r in reports[:4]:
        count = sum(e["count"] for e in r["result"]["inventory"] if e["kind"] == "quotient")
        totals.append(count)
    assert totals == [4, 4, 2, 4]
