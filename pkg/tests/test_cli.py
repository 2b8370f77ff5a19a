"""CLI surface: subcommands, exit codes, output formats, determinism."""

import io
import json
import subprocess
import sys
from contextlib import redirect_stderr, redirect_stdout

from prmquadrics.cli import main


def run_cli(argv):
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = main(argv)
    return code, out.getvalue(), err.getvalue()


def test_classify_exception_form():
    code, out, _ = run_cli(
        ["classify", "X0^2+X0*X1+X1^2+X2*X3", "--q", "2", "--N", "3"]
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["class"] == "elliptic"
    assert payload["rank"] == 4
    assert payload["point_count"] == 5


def test_points_subcommand():
    code, out, _ = run_cli(["points", "X0*X1", "--q", "2", "--N", "1"])
    assert code == 0
    payload = json.loads(out)
    assert payload["count"] == 2
    assert payload["points"] == ["(0:1)", "(1:0)"]


def test_code_info():
    code, out, _ = run_cli(["code", "info", "--q", "3", "--N", "2"])
    assert code == 0
    payload = json.loads(out)
    assert payload == {"q": 3, "N": 2, "length": 13, "dimension": 6, "min_distance": 6}


def test_minimal_methods_agree():
    argv = ["minimal", "X0^2+X1*X2", "--q", "3", "--N", "2"]
    verdicts = {}
    for method in ("char", "interp", "exhaustive"):
        code, out, _ = run_cli(argv + ["--method", method])
        assert code == 0
        verdicts[method] = json.loads(out)
    assert all(not v["minimal"] for v in verdicts.values())
    assert verdicts["char"]["witness"] is None
    assert verdicts["interp"]["witness"] is not None


def test_census_exhaustive_2_3():
    code, out, _ = run_cli(
        ["census", "--q", "2", "--N", "3", "--method", "exhaustive", "--workers", "2"]
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["rows"] == [
        {"weight": 4, "closed": 105, "brute": 105},
        {"weight": 6, "closed": 280, "brute": 280},
    ]


def test_census_csv_and_out_file(tmp_path):
    target = tmp_path / "table.csv"
    code, out, _ = run_cli(
        ["census", "--q", "2", "--N", "2", "--method", "exhaustive",
         "--workers", "1", "--format", "csv", "--out", str(target)]
    )
    assert code == 0 and out == ""
    assert target.read_text().splitlines() == ["weight,closed,brute", "2,21,21"]


def test_census_worker_output_identical():
    argv = ["census", "--q", "2", "--N", "2", "--method", "char"]
    _, out1, _ = run_cli(argv + ["--workers", "1"])
    _, out2, _ = run_cli(argv + ["--workers", "2"])
    assert out1 == out2


def test_verify_subcommands_pass():
    for argv in (
        ["verify", "exception"],
        ["verify", "serre", "--q", "2", "--N", "2"],
        ["verify", "pencil", "--q", "2"],
        ["verify", "pencil", "--q", "3"],
        ["verify", "containment", "--q", "2", "--N", "2", "--workers", "1", "--limit", "2"],
    ):
        code, out, err = run_cli(argv)
        assert code == 0, (argv, err)
        payload = json.loads(out)
        assert payload.get("holds", True)


def test_verify_containment_dump_shape():
    code, out, _ = run_cli(
        ["verify", "containment", "--q", "2", "--N", "2", "--workers", "1", "--limit", "1"]
    )
    payload = json.loads(out)
    assert payload["violation_count"] > 0
    assert payload["shapes"] == {"rank3_in_hyperplane_pair": payload["violation_count"]}
    assert len(payload["violations"]) == 1
    v = payload["violations"][0]
    assert {"form", "witness", "form_report", "witness_report", "shape"} == set(v)


def test_usage_errors_exit_2():
    cases = [
        ["classify", "X0 + X1", "--q", "2", "--N", "3"],      # non-homogeneous
        ["classify", "X0*X9", "--q", "2", "--N", "3"],        # unknown variable
        ["classify", "X0^2", "--q", "6", "--N", "2"],         # not a prime power
        ["classify", "X0^2", "--q", "27", "--N", "2"],        # beyond max order
        ["classify", "0", "--q", "2", "--N", "2"],            # zero form
        ["census", "--q", "2", "--N", "5"],                   # budget exceeded
        ["code", "info"],                                     # missing --q/--N
        ["minimal", "X0^2", "--q", "4", "--N", "2", "--format", "csv"],  # no csv here
    ]
    for argv in cases:
        code, _, err = run_cli(argv)
        assert code == 2, (argv, err)


def test_table_format():
    code, out, _ = run_cli(
        ["census", "--q", "2", "--N", "2", "--method", "char",
         "--workers", "1", "--format", "table"]
    )
    assert code == 0
    assert "weight" in out and "21" in out


def test_module_entrypoint_subprocess():
    proc = subprocess.run(
        [sys.executable, "-m", "prmquadrics.cli", "verify", "exception"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["holds"] is True
