import csv
import io
import json

import pytest

from primdiv.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_field_info(capsys):
    code, out, _ = run(capsys, "field-info", "--m", "-23")
    row = json.loads(out)["rows"][0]
    assert code == 0 and row["class_number"] == 3 and row["discriminant"] == -23


def test_scan_rational_csv(capsys):
    code, out, _ = run(capsys, "scan-rational", "--gamma", "2", "--n-max", "12", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and any(r["n"] == "6" and r["primitive"] == "False" for r in rows)


def test_json_output_deterministic(capsys):
    args = ("scan-quad", "--field", "5", "--gamma", "3,1,2", "--n-max", "15")
    assert run(capsys, *args)[1] == run(capsys, *args)[1]


def test_out_file(tmp_path, capsys):
    path = tmp_path / "r.json"
    code, out, _ = run(capsys, "height", "--rational", "3/2", "--out", str(path))
    assert code == 0 and json.loads(path.read_text())["rows"][0]["value"] > 1.09


def test_valuation_and_height(capsys):
    code, out, _ = run(capsys, "valuation", "--rational", "2", "--n", "21", "--p", "7")
    row = json.loads(out)["rows"][0]
    assert code == 0 and row["value"] == 2 and row["direct"] == 2
    code, out, _ = run(capsys, "height", "--field", "5", "--value", "21,8,11")
    assert code == 0 and abs(json.loads(out)["rows"][0]["value"] - 1.83035) < 1e-4


def test_theta_yu_threshold(capsys):
    assert run(capsys, "theta", "--field", "5", "--count", "3")[0] == 0
    code, out, _ = run(capsys, "yu-bound", "--k", "1", "--d", "1", "--heights", "0.6931471805599453",
                       "--prime-norm", "101", "--p", "101", "--B", "10")
    assert code == 0 and abs(json.loads(out)["rows"][0]["rhs"] / 1.0478e8 - 1) < 1e-4
    assert run(capsys, "threshold", "--n", "1000", "--variant", "thm13")[0] == 0


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "field-constants")
    assert code == 0 and json.loads(out)["suites"][0]["passed"]


@pytest.mark.parametrize("argv", [
    ["bogus"],
    ["field-info", "--m", "12"],
    ["scan-rational", "--gamma", "1", "--n-max", "5"],
    ["scan-rational", "--gamma", "2"],
    ["theta", "--field", "5", "--count", "0"],
    ["yu-bound", "--k", "1", "--d", "1", "--heights", "1", "--prime-norm", "3", "--p", "3"],
    ["verify", "--suite", "nope"],
    ["height", "--field", "5", "--value", "1,2,0"],
])
def test_usage_errors_exit_1(argv, capsys):
    with pytest.raises(SystemExit) as exc:
        raise SystemExit(main(argv))
    assert exc.value.code == 1


def test_budget_exhaustion_strict_exit_3(capsys):
    # a tiny factoring budget leaves Phi_n(2) cofactors unsplit
    args = ["scan-rational", "--gamma", "2", "--n-min", "60", "--n-max", "70", "--effort", "10,1,0"]
    assert run(capsys, *args)[0] == 0
    assert run(capsys, *args, "--strict")[0] == 3
