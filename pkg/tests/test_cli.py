import io
import json
import shutil
import subprocess
import sys

import pytest

from ival import __version__
from ival.cli import main
from ival.expr import evaluate, parse

from helpers import same_interval_bits


def run(capsys, *argv):
    rc = main(list(argv))
    out = capsys.readouterr()
    return rc, out.out, out.err


def test_version(capsys):
    with pytest.raises(SystemExit) as ei:
        main(["--version"])
    assert ei.value.code == 0
    assert capsys.readouterr().out.strip() == f"ival {__version__}"


def test_eval_basic(capsys):
    rc, out, err = run(capsys, "eval", "[1,2]*[3,4]")
    assert rc == 0
    assert out == "[3,8]\n"
    assert err == ""


def test_eval_point_expression(capsys):
    rc, out, _ = run(capsys, "eval", "1+2")
    assert rc == 0 and out == "[3,3]\n"


def test_eval_empty_exits_2(capsys):
    rc, out, _ = run(capsys, "eval", "[2,1]")
    assert rc == 2
    assert out == "Empty\n"
    rc, out, _ = run(capsys, "eval", "[1,2]/(1-1)")
    assert rc == 2 and out == "Empty\n"


def test_eval_parse_error_exits_1(capsys):
    rc, out, err = run(capsys, "eval", "[1,2] @@")
    assert rc == 1
    assert out == ""
    assert err.startswith("error:")
    assert "position" in err


def test_eval_split_rendering(capsys):
    rc, out, _ = run(capsys, "eval", "--split-div", "[1,2]/[-1,1]")
    assert rc == 0
    assert out == "[-inf,-1] ∪ [1,inf]\n"
    rc, out, _ = run(capsys, "eval", "--split-div", "--ascii", "[1,2]/[-1,1]")
    assert out == "[-inf,-1] U [1,inf]\n"
    # hull mode: same expression collapses to the whole line
    rc, out, _ = run(capsys, "eval", "[1,2]/[-1,1]")
    assert out == "[-inf,inf]\n"


def test_eval_nested_split_warns_on_stderr(capsys):
    rc, out, err = run(capsys, "eval", "--split-div", "[1,2]/[-1,1]+1")
    assert rc == 0
    assert out == "[-inf,inf]\n"
    assert "warning:" in err and "hull" in err


def test_eval_hex_round_trip(capsys):
    rc, out, _ = run(capsys, "eval", "--hex", "0.1")
    assert rc == 0
    reparsed = evaluate(parse(out.strip()))
    original = evaluate(parse("0.1"))
    assert same_interval_bits(reparsed.interval, original.interval)
    # a split result round-trips per part through its union rendering
    rc, out, _ = run(capsys, "eval", "--hex", "--split-div", "[1,2]/[-1,1]")
    left, right = out.strip().split(" ∪ ")
    orig = evaluate(parse("[1,2]/[-1,1]"), split_div=True)
    assert same_interval_bits(evaluate(parse(left)).interval, orig.parts[0])
    assert same_interval_bits(evaluate(parse(right)).interval, orig.parts[1])


def test_eval_reads_stdin(capsys, monkeypatch):
    monkeypatch.setattr(sys, "stdin", io.StringIO("[1,1]+[2,2]"))
    rc, out, _ = run(capsys, "eval")
    assert rc == 0 and out == "[3,3]\n"
    monkeypatch.setattr(sys, "stdin", io.StringIO("4/2"))
    rc, out, _ = run(capsys, "eval", "-")
    assert rc == 0 and out == "[2,2]\n"


def test_exhaust_micro_format(tmp_path, capsys):
    report = tmp_path / "report.jsonl"
    figures = tmp_path / "figs"
    rc = main(["exhaust", "--p", "2", "--emin", "-1", "--emax", "1",
               "--report", str(report), "--figures", str(figures)])
    captured = capsys.readouterr()
    assert rc == 0
    lines = [json.loads(line) for line in report.read_text().splitlines()]
    kinds = {rec["record"] for rec in lines}
    assert kinds == {"format", "op", "summary"}
    fmt_rec = next(r for r in lines if r["record"] == "format")
    assert fmt_rec["intervals"] == 152
    assert fmt_rec["pairs_per_op"] == 152 * 152
    op_recs = [r for r in lines if r["record"] == "op"]
    assert {r["op"] for r in op_recs} == {"add", "sub", "mul", "div"}
    assert all(r["mismatches"] == 0 for r in op_recs)
    assert all(r["zero_sign_violations"] == 0 for r in op_recs)
    summary = next(r for r in lines if r["record"] == "summary")
    assert summary["passed"] is True
    # div kinds partition the pair count
    div_rec = next(r for r in op_recs if r["op"] == "div")
    rk = div_rec["result_kinds"]
    assert rk["empty"] + rk["single"] + rk["split"] == 152 * 152
    assert rk["split"] > 0
    # progress lines go to stderr, one per op
    assert captured.err.count("ok") == 4
    # figures rendered alongside the report
    names = sorted(p.name for p in figures.iterdir())
    assert names == ["div_kinds.png", "format_values.png", "sweep_summary.png"]
    assert all((figures / n).stat().st_size > 2000 for n in names)


def test_exhaust_single_op_to_stdout(capsys):
    rc = main(["exhaust", "--p", "2", "--emin", "-1", "--emax", "1",
               "--op", "add"])
    captured = capsys.readouterr()
    assert rc == 0
    lines = [json.loads(line) for line in captured.out.splitlines()]
    ops = [r for r in lines if r["record"] == "op"]
    assert len(ops) == 1 and ops[0]["op"] == "add"


def test_exhaust_rejects_bad_format(capsys):
    rc = main(["exhaust", "--p", "0"])
    captured = capsys.readouterr()
    assert rc == 1
    assert captured.err.startswith("error:")


def test_console_script_entry_point():
    exe = shutil.which("ival")
    assert exe is not None, "console script not installed"
    proc = subprocess.run([exe, "eval", "[1,2]+[3,4]"],
                          capture_output=True, text=True, timeout=60)
    assert proc.returncode == 0
    assert proc.stdout == "[4,6]\n"
