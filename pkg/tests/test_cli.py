import csv
import io
import json

import pytest

from hyperreduce.cli import main

KDF_EQ13 = json.dumps({
    "coupled_num": ["1"], "row_num": ["1/3"], "col_num": ["1/5"],
    "coupled_den": ["2"], "row_den": ["2/3"], "col_den": ["2/5"],
})
SC_PARAMS = json.dumps({"d": "3/2", "e": "7/3", "alpha": "2/7", "beta": "3/7", "m": 0, "n": 0})


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_eval_pfq_float_at_zero(capsys):
    code, out, _ = run(capsys, "eval", "--fn", "pfq", "--spec", "{}", "--x", "0", "--mode", "float")
    assert code == 0
    assert json.loads(out)["value"] == 1.0


def test_eval_kdf_exact(capsys):
    code, out, _ = run(capsys, "eval", "--fn", "kdf", "--spec", KDF_EQ13, "--order", "1")
    assert code == 0
    assert json.loads(out) == ["1", "1/2"]


def test_eval_exact_partial_sum_and_spec_file(capsys, tmp_path):
    path = tmp_path / "f21.json"
    path.write_text(json.dumps({"fn": "pfq", "num": ["1", "1"], "den": ["2"]}))
    code, out, _ = run(capsys, "eval", "--spec", str(path), "--order", "2", "--x", "1/2")
    assert code == 0
    # 1 + 1/4 + 1/12
    assert json.loads(out) == {"coeffs": ["1", "1/2", "1/3"], "x": "1/2", "partial_sum": "4/3"}


def test_eval_sd_zero_weight_names_parameter(capsys):
    spec = json.dumps({"coupled_num": [{"value": "1/2", "weights": [0, 0]}]})
    code, out, err = run(capsys, "eval", "--fn", "sd", "--spec", spec)
    assert code == 2
    assert out == ""
    assert "coupled_num[0]" in err


@pytest.mark.parametrize("argv", [
    ["eval", "--fn", "pfq", "--spec", "{not json"],
    ["eval", "--fn", "pfq", "--spec", "{}", "--x", "0.5"],
    ["eval", "--fn", "pfq", "--spec", json.dumps({"num": [], "den": ["-2"]}), "--order", "5"],
    ["verify", "--id", "T9Z9"],
    ["sweep", "--ids", "SC13,NOPE"],
    ["frobnicate"],
])
def test_invalid_input_exit_2(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_eval_no_convergence_exit_3(capsys):
    code, _, err = run(capsys, "eval", "--fn", "pfq", "--spec", json.dumps({"num": ["1", "1"], "den": ["2"]}),
                       "--x", "1/2", "--mode", "float", "--max-terms", "5")
    assert code == 3
    assert "numeric failure" in err


def test_verify_seeded_pass(capsys):
    code, out, _ = run(capsys, "verify", "--id", "SC14", "--seed", "7", "--order", "10")
    assert code == 0
    report = json.loads(out)
    assert report["status"] == "PASS" and report["order"] == 10


def test_verify_t3e10_resolution(capsys):
    code, out, _ = run(capsys, "verify", "--id", "T3E10", "--seed", "3")
    assert code == 0
    assert json.loads(out)["status"] == "PASS"


def test_verify_rejected_reading_exits_1(capsys):
    params = json.dumps({"d": "3/2", "alpha": "2/7", "beta": "3/7", "m": 1, "n": 1})
    code, out, _ = run(capsys, "verify", "--id", "T1E4", "--params", params, "--variant", "quarter_x2")
    assert code == 1
    assert json.loads(out)["status"] == "FAIL"


def test_verify_polar_params_exit_2(capsys):
    params = json.dumps({"d": "1", "e": "-2", "alpha": "1/3", "beta": "1/5"})
    code, out, _ = run(capsys, "verify", "--id", "SC13", "--params", params)
    assert code == 2
    assert json.loads(out)["status"] == "SKIPPED_POLAR"


def test_verify_float_mode(capsys):
    code, out, _ = run(capsys, "verify", "--id", "SC15", "--params", SC_PARAMS, "--mode", "float")
    assert code == 0
    assert json.loads(out)["mode"] == "float"


def test_sweep_special_cases(capsys, tmp_path):
    csv_path = tmp_path / "summary.csv"
    code, out, err = run(capsys, "sweep", "--ids", "SC13,SC14,SC15,SC16", "--trials", "5",
                         "--order", "8", "--csv", str(csv_path))
    assert code == 0
    reports = [json.loads(line) for line in out.splitlines()]
    assert len(reports) == 20
    assert all(r["status"] == "PASS" for r in reports)
    rows = list(csv.DictReader(io.StringIO(csv_path.read_text())))
    assert [r["id"] for r in rows] == ["SC13", "SC14", "SC15", "SC16"]
    assert all(r["trials"] == "5" and r["pass"] == "5" for r in rows)
    assert "20 reports" in err


def test_sweep_beta_equals_alpha_to_file(capsys, tmp_path):
    out_path = tmp_path / "reports.jsonl"
    code, out, _ = run(capsys, "sweep", "--ids", "T1E1,T2E6", "--trials", "2", "--order", "6",
                       "--beta-equals-alpha", "--out", str(out_path))
    assert code == 0 and out == ""
    for line in out_path.read_text().splitlines():
        p = json.loads(line)["params"]
        assert p["alpha"] == p["beta"]


def _bench_rows(capsys, *extra):
    code, out, _ = run(capsys, "bench", "--id", "T1E2", "--params", SC_PARAMS, *extra)
    assert code == 0
    return list(csv.DictReader(io.StringIO(out)))


def test_bench_at_zero(capsys):
    rows = _bench_rows(capsys, "--x", "0", "--repeats", "1")
    assert [r["side"] for r in rows] == ["KDF", "F3", "SUM"]
    assert all(r["terms"] == "1" for r in rows)


def test_bench_term_counts_independent_of_repeats(capsys):
    one = _bench_rows(capsys, "--repeats", "1")
    nine = _bench_rows(capsys, "--repeats", "9")
    assert [r["terms"] for r in one] == [r["terms"] for r in nine]
    assert [r["repeats"] for r in nine] == ["9"] * 3
    by_side = {r["side"]: r for r in one}
    assert int(by_side["SUM"]["terms"]) <= int(by_side["KDF"]["terms"])
    assert all(float(r["rel_error"]) <= 1e-10 for r in one)


def test_list(capsys):
    code, out, _ = run(capsys, "list")
    assert code == 0
    entries = json.loads(out)
    assert len(entries) == 16
    assert sum(len(e["links"]) for e in entries) == 24
