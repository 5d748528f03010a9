import json
import re
import subprocess
import sys

import pytest

from aglcount.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def strip_timing(text):
    return re.sub(r'"elapsed_seconds": [0-9.e-]+', '"elapsed_seconds": X', text)


def test_count_functions_basic(capsys):
    code, out = run_cli(capsys, "count-functions", "--q", "2", "--n", "2")
    assert code == 0
    body = json.loads(out)
    assert body["results"]["function_classes"] == "5"
    assert body["status"] == "ok"


def test_count_functions_n0_convention(capsys):
    code, out = run_cli(capsys, "count-functions", "--q", "2", "--n", "0")
    assert code == 0
    assert json.loads(out)["results"]["function_classes"] == "2"


def test_count_functions_rejects_non_prime_power(capsys):
    code, out = run_cli(capsys, "count-functions", "--q", "6", "--n", "2")
    assert code != 0
    assert "not a prime power" in json.loads(out)["results"]["error"]


def test_count_functions_guard(capsys):
    code, out = run_cli(capsys, "count-functions", "--q", "2", "--n", "25")
    assert code != 0
    code, out = run_cli(capsys, "count-functions", "--q", "2", "--n", "12", "--max-n", "10")
    assert code != 0


def test_results_are_decimal_strings(capsys):
    code, out = run_cli(capsys, "count-functions", "--q", "2", "--n", "8")
    body = json.loads(out)
    value = body["results"]["function_classes"]
    assert isinstance(value, str) and value.isdigit()
    assert int(value) > 2**64  # needs the string encoding


def test_count_cosets(capsys):
    code, out = run_cli(capsys, "count-cosets", "--n", "3", "--coset-classes")
    assert code == 0
    assert json.loads(out)["results"]["coset_classes"] == "3"
    code, out = run_cli(capsys, "count-cosets", "--n", "2", "--s", "0", "--r", "0")
    assert code == 0
    assert json.loads(out)["results"]["quotient_classes"] == "2"


def test_count_cosets_range_errors(capsys):
    code, _ = run_cli(capsys, "count-cosets", "--n", "4", "--s", "5", "--r", "3")
    assert code != 0
    code, _ = run_cli(capsys, "count-cosets", "--n", "12")
    assert code != 0  # default guard is 10


def test_parallelism_yields_identical_report(capsys):
    _, first = run_cli(capsys, "count-functions", "--q", "2", "--n", "6", "--parallelism", "1")
    _, second = run_cli(capsys, "count-functions", "--q", "2", "--n", "6", "--parallelism", "2")
    assert strip_timing(first) == strip_timing(second)


def test_out_file_matches_stdout(tmp_path, capsys):
    path = tmp_path / "report.json"
    _, out = run_cli(capsys, "count-functions", "--q", "3", "--n", "2", "--out", str(path))
    assert path.read_text() == out


def test_csv_format(capsys):
    code, out = run_cli(capsys, "count-functions", "--q", "2", "--n", "3", "--format", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "command,key,value"
    assert "count-functions,result:function_classes,10" in lines


def test_verify_suites_pass(capsys):
    for argv in (
        ("verify", "--suite", "class-equation", "--q", "2", "--n", "5"),
        ("verify", "--suite", "oracle", "--q", "2", "--n", "2"),
        ("verify", "--suite", "oracle", "--q", "3", "--n", "2"),
        ("verify", "--suite", "reps", "--q", "2", "--n", "2"),
        ("verify", "--suite", "duality", "--n", "3"),
        ("verify", "--suite", "compound", "--n", "6"),
        ("verify", "--suite", "asymptotic", "--n-max", "4"),
    ):
        code, out = run_cli(capsys, *argv)
        body = json.loads(out)
        assert code == 0, body
        assert body["status"] == "ok"
        assert all(c["status"] == "pass" for c in body["checks"])


def test_verify_unknown_suite():
    with pytest.raises(SystemExit):
        main(["verify", "--suite", "nonsense"])


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "aglcount", "count-functions", "--q", "2", "--n", "1"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["results"]["function_classes"] == "3"
