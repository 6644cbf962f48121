import io
import sys
from pathlib import Path

import pytest

from aspfo.cli import run

DATA = Path(__file__).parent.parent / "data"


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run([str(a) for a in argv], out, err)
    return code, out.getvalue(), err.getvalue()


def lines(*argv):
    code, out, err = call(*argv, "--format", "lines")
    return code, out.splitlines(), err


def test_verify_split_hc3():
    code, out, _ = lines("verify-split", "--program", DATA / "hc3.lp")
    assert code == 0
    assert out[:4] == ["RESULT: EQUAL", "ANSWER_SETS: 1", "MODELS: 1", "PARTS: 7"]
    assert out[4].startswith("MODEL 1: Edge(a,b) Edge(b,c) Edge(c,a) In(a,b) In(b,c) In(c,a)")


def test_verify_split_other_graphs():
    assert lines("verify-split", "--program", DATA / "hc4.lp")[1][:3] == [
        "RESULT: EQUAL", "ANSWER_SETS: 0", "MODELS: 0"]
    assert lines("verify-split", "--program", DATA / "hc3sym.lp")[1][1] == "ANSWER_SETS: 2"


def test_split(tmp_path):
    code, out, _ = lines("split", "--program", DATA / "hc3.lp")
    assert code == 0
    assert out[0] == "PARTS: 7" and out[1] == "PART 1: generate rules 1"
    bad = tmp_path / "bad.lp"
    bad.write_text("{r(X)} :- g(Y,X), r(Y). g(a,b).")
    code, out, _ = lines("split", "--program", bad)
    assert code == 1 and out[0] == "RESULT: NO PROPER SPLITTING"


def test_translate():
    code, out, _ = lines("translate", "--program", DATA / "hc3.lp")
    assert (code, out) == (0, ["MODULES: 9"])
    code, text, _ = call("translate", "--program", DATA / "hc3.lp")
    assert "gmodule" in text and "herbrand" in text


def test_stable_wellfounded_totality():
    assert lines("stable", "--dmodule", DATA / "fab.dmod")[:2] == (0, ["STABLE_MODELS: 1", "MODEL 1: a"])
    code, out, _ = lines("wellfounded", "--dmodule", DATA / "fab.dmod")
    assert code == 0 and out[0] == "TOTAL: no"
    assert lines("totality", "--dmodule", DATA / "fab.dmod")[:2] == (1, ["RESULT: NOT TOTAL"])
    assert lines("totality", "--dmodule", DATA / "top.dmod")[:2] == (0, ["RESULT: TOTAL"])
    assert lines("stable", "--dmodule", DATA / "taut.dmod")[1] == ["STABLE_MODELS: 0"]


def test_stable_with_params():
    code, out, _ = lines("stable", "--dmodule", DATA / "qr.dmod", "--params", DATA / "qr.params")
    assert code == 0 and out[0] == "STABLE_MODELS: 1"
    naive = lines("stable", "--dmodule", DATA / "qr.dmod", "--params", DATA / "qr.params", "--naive")
    assert naive[1] == out


def test_models():
    code, out, _ = lines("models", "--theory", DATA / "hc.aspfo", "--herbrand")
    assert code == 0 and out[0] == "MODELS: 1"
    naive = lines("models", "--theory", DATA / "hc.aspfo", "--herbrand", "--naive", "--cap", "100")
    assert naive[0] == 3 and "CAP EXCEEDED" in naive[2]
    code, out, _ = lines("models", "--theory", DATA / "col.theory", "--structure", DATA / "col.struct")
    assert code == 0 and out[0] == "MODELS: 1"


def test_answer_sets():
    code, out, _ = lines("answer-sets", "--elp", "--program", DATA / "interview.elp")
    assert code == 0 and out[0] == "ANSWER_SETS: 1"
    assert "Interview(david)" in out[1].split()
    code, out, _ = lines("answer-sets", "--program", DATA / "hc3sym.lp")
    assert out[0] == "ANSWER_SETS: 2"


def test_equiv3():
    code, out, _ = lines("equiv3", "--lhs", "~(p & q)", "--rhs", "~p | ~q")
    assert code == 0 and "RESULT: EQUIVALENT (bounded)" in out
    code, out, _ = lines("equiv3", "--lhs", "true", "--rhs", "p | ~p")
    assert code == 1 and "RESULT: NOT EQUIVALENT" in out
    assert any(line.startswith("COUNTEREXAMPLE:") and "p=u" in line for line in out)


def test_render_commands():
    code, out, _ = lines("render", "--regime", "fo", "--interp", DATA / "col.int", "--input", DATA / "col.theory")
    assert code == 0 and out[0] == "REGIME: FO"
    golden = (Path(__file__).parent / "goldens" / "col_standard.txt").read_text().rstrip("\n")
    assert out[1] == "TEXT: " + golden
    code, text, _ = call("render", "--regime", "gl", "--interp", DATA / "uncolored.int", "--input", DATA / "uncolored.elp")
    assert code == 0 and "the agent does not know Aux" in text
    code, text, _ = call("render", "--regime", "tarskian", "--interp", DATA / "hc.int", "--input", DATA / "hc.aspfo")
    assert code == 0 and "by induction" in text


def test_gcompl():
    code, out, _ = lines("gcompl", "--theory", DATA / "hc.aspfo")
    assert code == 0 and out == [
        "GMODULES: 1",
        "GCOMPL In/2: !Y1: !Y2: (In(Y1,Y2) => ?X: ?Y: (Y1 = X & Y2 = Y & Edge(X,Y)))",
    ]


def test_parse_command():
    code, text, _ = call("parse", "--kind", "program", "--input", DATA / "hc3.lp")
    assert code == 0 and "{In(X,Y)} :- Edge(X,Y)." in text


def test_stdin(monkeypatch):
    monkeypatch.setattr(sys, "stdin", io.StringIO("q(a). p(X) :- q(X)."))
    code, out, _ = lines("answer-sets", "--program", "-")
    assert code == 0 and out == ["ANSWER_SETS: 1", "ANSWER_SET 1: p(a) q(a)"]


def test_error_exit_codes(tmp_path):
    bad = tmp_path / "bad.lp"
    bad.write_text("p(X :- q.")
    code, out, err = call("answer-sets", "--program", bad)
    assert code == 2 and out == "" and err.startswith("error:")
    code, _, err = call("answer-sets", "--program", tmp_path / "missing.lp")
    assert code == 2
    assert call("no-such-command")[0] == 2
    code, out, err = call("verify-split", "--program", DATA / "hc3.lp", "--cap", "4")
    assert code == 3 and out == "" and err.startswith("CAP EXCEEDED: ")


@pytest.mark.parametrize("argv", [
    ("verify-split", "--program", DATA / "hc3.lp"),
    ("equiv3", "--lhs", "p", "--rhs", "~~p"),
    ("stable", "--dmodule", DATA / "fab.dmod"),
])
def test_output_is_deterministic(argv):
    assert call(*argv) == call(*argv)
