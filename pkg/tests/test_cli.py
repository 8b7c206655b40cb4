import csv
import io
import json
import subprocess
import sys

import pytest

from loopbrauer.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_dims(capsys):
    code, out, _ = run(capsys, "dims", "--family", "A", "--n", "3")
    assert code == 0
    data = json.loads(out)
    assert (data["formula"], data["enumerated"]) == (76, 76)
    code, out, _ = run(capsys, "dims", "--family", "L", "--n", "4", "--format", "text")
    assert code == 0 and "209" in out and "agree" in out
    code, out, _ = run(capsys, "dims", "--family", "A", "--n", "0")
    assert json.loads(out)["enumerated"] == 1


def test_dims_mismatch_exit_code(capsys, monkeypatch):
    from loopbrauer import diagrams
    monkeypatch.setattr(diagrams, "dimension_formula", lambda family, n: -1)
    code, _, _ = run(capsys, "dims", "--family", "A", "--n", "2")
    assert code == 2


def test_mult(capsys, tmp_path):
    code, out, _ = run(capsys, "mult", "e1", "e1", "--n", "2", "--format", "text")
    assert (code, out.strip()) == (0, "x * e1")
    code, out, _ = run(capsys, "mult", "u1", "u1", "--n", "2", "--mode", "two-param",
                       "--format", "text")
    assert out.strip() == "x2 * u1"
    code, out, _ = run(capsys, "mult", "1", "2; 1 0 3 2", "--format", "text")
    assert out.strip() == "e1"
    code, out, _ = run(capsys, "mult", "e1", "u2", "--n", "2", "--cache-dir", str(tmp_path))
    assert code == 0 and list(tmp_path.iterdir())
    cached = json.loads(out)
    code, out, _ = run(capsys, "mult", "e1", "u2", "--n", "2")
    assert json.loads(out) == cached


@pytest.mark.parametrize("argv", [
    ["mult", "2; 0 9", "e1", "--n", "2"],
    ["mult", "q1", "e1", "--n", "2"],
    ["mult", "e1", "e1"],
    ["radical", "--family", "A", "--n", "2", "--x0", "0.5"],
    ["cell", "--family", "A", "--n", "2", "--lambda", "1,2"],
    ["cell", "--family", "A", "--n", "2", "--lambda", "3"],
    ["dims", "--n", "2"],
    ["nosuchcommand"],
])
def test_parse_errors_exit_3(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        raise SystemExit(main(argv))
    assert exc.value.code == 3


def test_eval_at_zero_exit_4(capsys):
    assert run(capsys, "radical", "--family", "A", "--n", "2", "--x0", "0")[0] == 4
    assert run(capsys, "cell", "--family", "A", "--n", "2", "--lambda", "", "--x0", "0")[0] == 4
    assert run(capsys, "report", "--x0", "0", "--n", "1")[0] == 4


def test_cell(capsys):
    code, out, _ = run(capsys, "cell", "--family", "A", "--n", "2", "--lambda", "",
                       "--x0", "1", "--x0", "1/2")
    data = json.loads(out)
    assert code == 0
    assert data == {"family": "A", "n": 2, "t": 2, "lambda": [], "dim": 2,
                    "radical_dim": {"1": 1, "1/2": 0}}


def test_enumerate_formats(capsys):
    code, out, _ = run(capsys, "enumerate", "--family", "L", "--n", "2", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 7 and rows[0].keys() == {"index", "rank", "partner"}
    code, out, _ = run(capsys, "enumerate", "--family", "A", "--n", "2", "--t", "2")
    assert json.loads(out)["count"] == 4


def test_relations_branch_central(capsys):
    code, out, _ = run(capsys, "relations", "--n", "3", "--format", "text")
    assert code == 0 and "FAIL" not in out
    code, out, _ = run(capsys, "branch", "--family", "A", "--n", "3")
    assert code == 0 and json.loads(out)["passed"]
    code, out, _ = run(capsys, "central", "--family", "A", "--n", "3", "--format", "csv")
    assert code == 0 and out.startswith("name,passed")


def test_radical_in_guaranteed_range_exits_2(capsys, monkeypatch):
    from loopbrauer import analysis
    monkeypatch.setattr(analysis, "semisimplicity_expected", lambda family, x0: True)
    code, _, _ = run(capsys, "radical", "--family", "A", "--n", "2", "--x0", "1")
    assert code == 2


def test_report_deterministic(capsys, tmp_path):
    args = ["report", "--family", "A", "--n", "2", "--cache-dir", str(tmp_path)]
    code1, out1, _ = run(capsys, *args)
    code2, out2, _ = run(capsys, *args)
    assert code1 == code2 == 0
    a, b = json.loads(out1), json.loads(out2)
    a.pop("timings"), b.pop("timings")
    assert json.dumps(a) == json.dumps(b)
    assert a["schema_version"] == 1 and a["passed"]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "loopbrauer", "dims", "--family", "S",
                           "--n", "3", "--format", "text"], capture_output=True, text=True)
    assert proc.returncode == 0 and "6" in proc.stdout


def test_corrupt_cache_exit_2(capsys, tmp_path):
    from loopbrauer.algebra import table_path
    table_path(tmp_path, "A", 2, "one-param").write_text("LOOPBRAUER-TABLE v1 A 2 one-param\n")
    code, _, err = run(capsys, "mult", "e1", "e1", "--n", "2", "--cache-dir", str(tmp_path))
    assert code == 2 and "cache" in err
