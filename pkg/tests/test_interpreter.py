import io

import pytest

from disordr.errors import EXTRACT_MESSAGE, REPLACE_MESSAGE, ParseError
from disordr.interpreter import Record, repl, run_script
from disordr.lang import Assign, Binary, Call, Index, Name, Num, Unary, parse_line, parse_script
from disordr.polytext import HEADER, parse_mvp
from disordr.storage import Shuffle

from session_data import (
    DISORD_SCRIPT,
    DOUBLING_OUT,
    DOUBLING_SCRIPT,
    UPPER_OUT,
    UPPER_SCRIPT,
)


def last_poly(result):
    text = [r.text for r in result.records if r.kind == "mvp"][-1]
    assert text.startswith(HEADER + "\n")
    return parse_mvp(text.split("\n", 1)[1])


# -- grammar -----------------------------------------------------------------

def test_precedence():
    assert parse_line("-2^2") == Unary("-", Binary("^", Num(2), Num(2)))
    assert parse_line("2^3^2") == Binary("^", Num(2), Binary("^", Num(3), Num(2)))
    assert parse_line("1+2*3") == Binary("+", Num(1), Binary("*", Num(2), Num(3)))
    assert parse_line("x < 1 + 2") == Binary("<", Name("x"), Binary("+", Num(1), Num(2)))
    assert parse_line("2*1:3") == Binary("*", Num(2), Binary(":", Num(1), Num(3)))


def test_assignment_targets():
    node = parse_line("coeffs(a)[coeffs(a) < 4] <- 0")
    assert isinstance(node, Assign) and isinstance(node.target, Index)
    assert isinstance(node.target.target, Call)
    with pytest.raises(ParseError):
        parse_line("1 <- 2")
    with pytest.raises(ParseError):
        parse_line("f(x) <- 2")


def test_comments_and_blank_lines():
    assert parse_line("   # nothing") is None
    statements = parse_script("\nx <- 1 # one\n\nx\n")
    assert [s.line for s in statements] == [2, 4]


# -- sessions ----------------------------------------------------------------

def test_disord_session():
    result = run_script(DISORD_SCRIPT)
    assert result.status == 0
    out = result.transcript
    assert "[1] 81 16 49  1  4 36  9 64 25" in out
    assert EXTRACT_MESSAGE in out and REPLACE_MESSAGE in out
    assert "do not match" in out
    assert "[1] 18.1111111  3.2500000 12.1428571 -5.0000000 -2.5000000  9.1666667" in out
    assert " [1]   1   2   3   4   0  -8 -18 -30 -44 -60" in out
    assert "[1]  5  6 11  4  8  9 12 10  7" in out


def test_doubling_session():
    result = run_script(DOUBLING_SCRIPT)
    assert result.status == 0
    assert last_poly(result) == parse_mvp(DOUBLING_OUT)


def test_uppercase_session():
    result = run_script(UPPER_SCRIPT)
    assert result.status == 0
    assert last_poly(result) == parse_mvp(UPPER_OUT)


@pytest.mark.parametrize("seed", [1, 2, 3])
def test_sessions_under_shuffle(seed):
    result = run_script(UPPER_SCRIPT, Shuffle(seed))
    assert last_poly(result) == parse_mvp(UPPER_OUT)
    result = run_script(DOUBLING_SCRIPT, Shuffle(seed))
    assert last_poly(result) == parse_mvp(DOUBLING_OUT)


def test_coefficient_idioms():
    script = """\
a <- mvp("5 a c^3 + a^2 d^2 f^2 + 4 a^3 b e^3 + 3 b c f + 2 b^2 e^3")
coeffs(a)[coeffs(a)<5] <- 4 + coeffs(a)[coeffs(a)<5]
coeffs(a) <- pmax(coeffs(a),3)
sort(coeffs(a))
coeffs(a) <- rev(rev(coeffs(a)))
try(coeffs(a) <- rev(coeffs(a)))
coeffs(a) <- coeffs(a)^2 + 7
max(coeffs(a))
"""
    result = run_script(script)
    assert result.status == 0
    outs = [r.text for r in result.records]
    assert outs[0] == "[1] 5 5 6 7 8"
    assert outs[1].startswith("Error [hash-mismatch]")
    assert outs[2] == "[1] 71"


def test_small_transcripts():
    cases = {
        "1+1": "[1] 2\n",
        "x <- 2\nx^10": "[1] 1024\n",
        "c(1,2,3)*2": "[1] 2 4 6\n",
        "(y <- 3:1)": "[1] 3 2 1\n",
        'mvp("x")==mvp("x")': "[1] TRUE\n",
        "a <- disord(1,2)\nlength(a)\nsort(a>1)": "[1] 2\n[1] FALSE  TRUE\n",
        "": "",
    }
    for source, expected in cases.items():
        result = run_script(source)
        assert result.status == 0, source
        assert result.transcript == expected, source


def test_exit_status():
    assert run_script("x <- (1").status == 2
    result = run_script("undefined\n1")
    assert result.status == 1
    assert result.records[0].code == "script-error"
    assert len(result.records) == 1
    assert run_script("try(undefined)\n1").status == 0


def test_record_classification():
    result = run_script('d <- disord(3,1,2)\nd\nsort(d)\nsum(d)\nmvp("x")\ntry(d[1])')
    kinds = [(r.kind, r.order_exposed) for r in result.records]
    assert kinds == [
        ("disord", True),
        ("vector", False),
        ("scalar", False),
        ("mvp", False),
        ("error", False),
    ]
    assert result.records[-1].code == "bad-index"
    assert isinstance(result.records[0], Record)


def test_errors_go_to_stderr():
    result = run_script("try(disord(1,2)[1])\n1")
    assert result.stdout == "[1] 1\n"
    assert result.stderr.startswith("Error [bad-index]: ")


# -- repl --------------------------------------------------------------------

def run_repl(text):
    out, err = io.StringIO(), io.StringIO()
    status = repl(stdin=io.StringIO(text), stdout=out, stderr=err, prompt="")
    return status, out.getvalue(), err.getvalue()


def test_repl_arithmetic():
    status, out, _ = run_repl("1+1\n")
    assert status == 0 and out == "[1] 2\n"


def test_repl_continues_after_errors():
    status, out, err = run_repl("a <- disord(1,2,3)\na[1]\nx <- (\nsum(a)\nq\nsum(a)\n")
    assert status == 0
    assert EXTRACT_MESSAGE in err
    assert "parse-error" in err
    assert out == "[1] 6\n"


@pytest.mark.parametrize("word", ["q", "q()", "quit", "quit()"])
def test_repl_quit(word):
    status, out, _ = run_repl(f"{word}\n1\n")
    assert status == 0 and out == ""
