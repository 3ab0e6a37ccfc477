import csv
import io
import json
import subprocess
import sys
import time

import pytest

import oracles
from ffhyper import cli
from ffhyper.value import CycValue
from ffhyper.verify import Check


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr().out
    return code, out


def write_instance(tmp_path, **data):
    path = tmp_path / "instance.json"
    path.write_text(json.dumps(data))
    return str(path)


def test_eval_both_identity_instance(tmp_path, capsys):
    path = write_instance(
        tmp_path, field={"p": 5, "a": 1}, A=[[1, 0], [0, 1]], beta=[1, 2], **{"lambda": [2, 3]}
    )
    code, out = run(capsys, "eval", path, "--which", "both")
    report = json.loads(out)
    assert code == 0
    fa, sa = report["outputs"]
    assert fa["label"] == "FA" and sa["label"] == "SA"
    assert fa["value"] == sa["value"]
    assert report["checks"] == [{"name": "S_A = F_A", "pass": True}]
    assert report["inputs"]["field"] == {"p": 5, "a": 1, "modulus": [0, 1], "generator": [2]}


def test_eval_zero_lambda_exit_3(tmp_path, capsys):
    path = write_instance(tmp_path, field={"p": 5}, A=[[1]], beta=[0], **{"lambda": [0]})
    assert run(capsys, "eval", path)[0] == 3


def test_eval_empty_lattice(tmp_path, capsys):
    path = write_instance(tmp_path, field={"p": 5}, A=[[2]], beta=[1], **{"lambda": [1]})
    code, out = run(capsys, "eval", path, "--which", "FA")
    report = json.loads(out)
    assert code == 0
    assert CycValue.from_json(report["outputs"][0]["value"]).is_zero()
    assert report["outputs"][0]["L_beta_count"] == 0


def test_eval_extension_field_with_twist(tmp_path, capsys):
    path = write_instance(
        tmp_path,
        field={"p": 3, "a": 2},
        A=[[1, -1], [2, 3]],
        beta=[1, 5],
        twist=[1, 1],
        **{"lambda": [[0, 1], 7]},
    )
    code, out = run(capsys, "eval", path, "--twist", "2,1")
    report = json.loads(out)
    assert code == 0
    assert report["inputs"]["A"] == [[1, 7], [2, 3]]
    assert report["inputs"]["twist"] == [2, 1]
    assert report["inputs"]["lambda"] == [[0, 1], [1, 2]]


@pytest.mark.parametrize(
    "content",
    [
        "not json",
        json.dumps({"field": {"p": 5}, "A": [[1]]}),
        json.dumps({"field": {"p": 6}, "A": [[1]], "beta": [0], "lambda": [1]}),
        json.dumps({"field": {"p": 5}, "A": [[1, 2], [1]], "beta": [0], "lambda": [1, 1]}),
        json.dumps({"field": {"p": 5}, "A": [[1]], "beta": [0], "lambda": [1, 2]}),
        json.dumps([1, 2]),
    ],
)
def test_eval_malformed_exit_2(tmp_path, capsys, content):
    path = tmp_path / "bad.json"
    path.write_text(content)
    assert run(capsys, "eval", str(path))[0] == 2


def test_eval_field_too_large_exit_4(tmp_path, capsys, monkeypatch):
    path = write_instance(tmp_path, field={"p": 2, "a": 21}, A=[[1]], beta=[0], **{"lambda": [1]})
    assert run(capsys, "eval", path)[0] == 4
    monkeypatch.setenv("FFHYPER_QMAX", "10")
    path = write_instance(tmp_path, field={"p": 11}, A=[[1]], beta=[0], **{"lambda": [1]})
    assert run(capsys, "eval", path)[0] == 4


def test_mccarthy_table_csv(capsys):
    code, out = run(capsys, "mccarthy", "--q", "5", "--a", "0", "0", "0", "--table", "--csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [r["t"] for r in rows] == ["1", "2", "3", "4"]
    assert all(r["check"] == "pass" for r in rows)
    assert set(rows[0]) == {"t", "value-re", "value-im", "check"}


def test_mccarthy_table_json_checks(capsys):
    code, out = run(capsys, "mccarthy", "--q", "5", "--a", "0", "0", "0", "--table")
    report = json.loads(out)
    assert code == 0
    assert len(report["outputs"]) == 4
    assert len(report["checks"]) == 8 and all(c["pass"] for c in report["checks"])


def test_mccarthy_q7_k1_matches_direct_summation(capsys):
    code, out = run(capsys, "mccarthy", "--q", "7", "--a", "2", "--t", "1")
    report = json.loads(out)
    assert code == 0
    F = oracles.PrimeField(7)
    logs = oracles.log_table(F)
    expected = sum(
        oracles.gauss(F, logs, (2 + x) % 6) * oracles.gauss(F, logs, -x % 6) * oracles.chi(F, logs, x, 6)
        for x in range(6)
    ) / 6 / oracles.gauss(F, logs, 2)
    re, im = report["outputs"][0]["complex"]
    assert abs(complex(re, im) - expected) < 1e-9


def test_mccarthy_reduces_alpha_exponents(capsys):
    code, out = run(capsys, "mccarthy", "--q", "5", "--a", "7", "-1", "4", "--t", "2")
    assert code == 0
    assert json.loads(out)["inputs"]["alphas"] == [3, 3, 0]


def test_mccarthy_errors(capsys):
    assert run(capsys, "mccarthy", "--q", "5", "--a", "0", "--t", "0")[0] == 3
    assert run(capsys, "mccarthy", "--q", "5", "--a", "0", "0", "--t", "1")[0] == 2
    assert run(capsys, "mccarthy", "--q", "6", "--a", "0", "--t", "1")[0] == 2
    assert run(capsys, "mccarthy", "--q", "5", "--a", "0")[0] == 2


def test_verify_gauss(capsys):
    code, out = run(capsys, "verify", "--suite", "gauss", "--qmax", "9")
    report = json.loads(out)
    assert code == 0 and report["checks"] and all(c["pass"] for c in report["checks"])


def test_verify_theorem(capsys):
    code, out = run(capsys, "verify", "--suite", "theorem13", "--qmax", "9", "--seed", "1")
    assert code == 0
    assert len(json.loads(out)["checks"]) == 7 * 25


def test_verify_all_smallest_field_is_fast(capsys):
    start = time.perf_counter()
    code, out = run(capsys, "verify", "--suite", "all", "--qmax", "3")
    assert code == 0
    assert time.perf_counter() - start < 1.0


def _strip_elapsed(text):
    data = json.loads(text)
    data.pop("elapsed_ms")
    return json.dumps(data)


def test_verify_deterministic(capsys):
    a = run(capsys, "verify", "--suite", "all", "--qmax", "5", "--seed", "7")[1]
    b = run(capsys, "verify", "--suite", "all", "--qmax", "5", "--seed", "7")[1]
    assert _strip_elapsed(a) == _strip_elapsed(b)


def test_verify_failure_exit_1(capsys, monkeypatch):
    monkeypatch.setattr(cli, "run_suite", lambda *a: [Check("forced", False)])
    assert run(capsys, "verify", "--suite", "gauss", "--qmax", "3")[0] == 1


def test_verify_qmax_over_bound(capsys, monkeypatch):
    monkeypatch.setenv("FFHYPER_QMAX", "8")
    assert run(capsys, "verify", "--qmax", "9")[0] == 4


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "ffhyper", "verify", "--suite", "gauss", "--qmax", "5"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["command"] == "verify"
