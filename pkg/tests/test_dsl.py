import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tlbraid.dsl import (
    Connect,
    Dump,
    Gate,
    Ghz,
    Init,
    execute_program,
    format_program,
    parse_program,
)
from tlbraid.dsl.ast import CircuitProgram, Header
from tlbraid.errors import DslError, DslRuntimeError, DslSemanticError, DslSyntaxError
from tlbraid.gates import Involution
from tlbraid.register import QuditRegisterState
from tlbraid.states import coefficients_closed_form, ghz_params
from tlbraid.tla import solve_phase

from conftest import PROGRAMS

MINIMAL = "system D=3 n=2\ninit |00>\nghz l=2 k=1\ndump json"


def test_minimal_program():
    prog = parse_program(MINIMAL)
    assert prog.header == Header(3, 2)
    assert prog.statements == (Init((0, 0)), Ghz(2, 1, None), Dump("json", None))


def test_whitespace_and_comments():
    text = "  system   D = 2  n=2   # header\n\n# nothing\ngate  B q = 0 l=1 k= 2 a2 = .5 phi=-1e-1 bsign = - lambda = [ X( 0 , 1 ) ]\n"
    (gate,) = parse_program(text).statements
    assert gate == Gate(0, 1, 2, 0.5, -0.1, -1, (Involution.transposition(0, 1),))


def test_comma_kets_for_large_D():
    prog = parse_program("system D=13 n=3\ninit |1,12,3>\nconnect |0,0,12> from x.json\n")
    assert prog.statements[0].digits == (1, 12, 3)
    assert prog.statements[1] == Connect((0, 0, 12), "x.json")
    assert "init |1,12,3>" in format_program(prog)
    one = parse_program("system D=13 n=1\ninit |12>\n")
    assert one.statements[0].digits == (12,)


@pytest.mark.parametrize("text,line,col,fragment", [
    ("system D=3 n=2\ngate B q=0 l=0 k=1 a2=0.5", 2, 14, "pivot collision"),
    ("system D=3 n=2\ngate B q=0 l=1 k=1 a2=0.2", 2, 23, "a2"),
    ("system D=3 n=2\ngate B q=0 l=1 k=3 a2=0.5", 2, 18, "k = 3"),
    ("system D=3 n=2\ninit |03>", 2, 6, "level 3"),
    ("system D=3 n=2\ninit |000>", 2, 6, "3 levels"),
    ("system D=3 n=3\ngate B q=0 l=1 k=1 a2=0.5 lambda=[I]", 2, 34, "2 entries"),
    ("system D=3 n=2\nghz l=3", 2, 7, "GHZ level"),
    ("system D=3 n=2\nghz l=2 bsigns=+", 2, 16, "2 signs"),
    ("system D=3 n=2\ngate B q=0 l=1 k=1 a2=0.5\ninit |00>", 3, 1, "before"),
    ("system D=3 n=2\ninit |00>\ninit |11>", 3, 1, "at most one"),
    ("system D=3 n=2\nsystem D=2 n=2", 2, 1, "duplicate"),
    ("system D=1 n=2", 1, 10, "D must be"),
    ("system D=3 n=2\ngate B q=0 l=1 k=1 a2=0.5 lambda=[X(0,5)]", 2, 35, "level outside"),
    ("system D=3 n=2\ngate B q=0 l=1 k=1 a2=0.5 phi=1e999", 2, 31, "finite"),
])
def test_semantic_errors(text, line, col, fragment):
    with pytest.raises(DslSemanticError) as exc:
        parse_program(text)
    assert (exc.value.line, exc.value.col) == (line, col)
    assert fragment in exc.value.message


@pytest.mark.parametrize("text,line,col,expected", [
    ("", 1, 1, "'system' header"),
    ("init |00>", 1, 1, "'system' header"),
    ("system D=3", 1, 11, "'n='"),
    ("system D=3 n=2\ngate B q=0 l=1 k=1", 2, 19, "'a2='"),
    ("system D=3 n=2\nfrobnicate", 2, 1, "one of init"),
    ("system D=3 n=2\ngate C q=0", 2, 6, "'B'"),
    ("system D=3 n=2\ninit |0a>", 2, 8, "a digit"),
    ("system D=3 n=2\ninit |00", 2, 9, "'>'"),
    ("system D=3 n=2\ndump xml", 2, 6, "'json' or 'csv'"),
    ("system D=3 n=2\nconnect |00> to f", 2, 14, "'from'"),
    ("system D=3 n=2\nconnect |00> from", 2, 18, "FILEPATH"),
    ("system D=3 n=2\ngate B q=0.5", 2, 10, "INT"),
    ("system D=3 n=2\nghz l=1 bsigns=*", 2, 16, "a token"),
    ("system D=3 n=2\ninit |00> extra", 2, 11, "end of line"),
])
def test_syntax_errors(text, line, col, expected):
    with pytest.raises(DslSyntaxError) as exc:
        parse_program(text)
    assert (exc.value.line, exc.value.col) == (line, col)
    assert expected in exc.value.expected


def test_huge_integer_is_a_syntax_error():
    with pytest.raises(DslSyntaxError):
        parse_program("system D=" + "9" * 5000 + " n=2")


@pytest.mark.parametrize("path", sorted(PROGRAMS.glob("*.braid")), ids=lambda p: p.name)
def test_example_round_trip(path):
    try:
        prog = parse_program(path.read_text())
    except DslError:
        return
    again = parse_program(format_program(prog))
    assert again == prog
    assert format_program(again) == format_program(prog)


# -- generated programs ----------------------------------------------------------

@st.composite
def programs(draw):
    D = draw(st.integers(2, 14))
    n = draw(st.integers(1, 4))
    level = st.integers(0, D - 1)
    stmts = []
    if draw(st.booleans()):
        stmts.append(Init(tuple(draw(st.lists(level, min_size=n, max_size=n)))))
    lam = st.one_of(
        st.just(Involution.identity()),
        st.tuples(level, level).map(lambda t: Involution.transposition(*t)),
    )
    for _ in range(draw(st.integers(0, 5))):
        kind = draw(st.sampled_from(["gate", "ghz", "connect", "dump"]))
        if kind == "gate":
            q = draw(level)
            l = draw(level.filter(lambda x: x != q))
            lambdas = draw(st.none() | st.lists(lam, min_size=n - 1, max_size=n - 1).map(tuple))
            stmts.append(Gate(q, l, draw(st.integers(1, n)), draw(st.floats(0.25, 1.0)),
                              draw(st.floats(-10, 10)), draw(st.sampled_from([1, -1])), lambdas))
        elif kind == "ghz":
            l = draw(st.integers(1, D - 1))
            signs = draw(st.none() | st.lists(st.sampled_from([1, -1]), min_size=l, max_size=l).map(tuple))
            stmts.append(Ghz(l, draw(st.integers(1, n)), signs))
        elif kind == "connect":
            stmts.append(Connect(tuple(draw(st.lists(level, min_size=n, max_size=n))), "dir/state-1.json"))
        else:
            stmts.append(Dump(draw(st.sampled_from(["json", "csv"])), draw(st.none() | st.just("out/x.csv"))))
    return CircuitProgram(Header(D, n), tuple(stmts))


@settings(max_examples=200, deadline=None)
@given(programs())
def test_pretty_print_round_trip(prog):
    text = format_program(prog)
    again = parse_program(text)
    assert again == prog
    assert format_program(again) == text


@settings(max_examples=500, deadline=None)
@given(st.binary(max_size=200))
def test_parse_never_crashes_on_bytes(data):
    try:
        parse_program(data)
    except (DslSyntaxError, DslSemanticError) as exc:
        assert exc.line >= 1 or exc.line == 0
        assert exc.col >= 1


@settings(max_examples=300, deadline=None)
@given(st.text(alphabet="systemDn=0123456789 |<>[](),.+-eIXBgatlkqphibsinjonfrcdu#\n", max_size=120))
def test_parse_never_crashes_on_grammar_soup(text):
    try:
        parse_program("system D=3 n=2\n" + text)
    except (DslSyntaxError, DslSemanticError) as exc:
        assert exc.col >= 1


# -- execution -------------------------------------------------------------------

def test_execute_minimal_ghz():
    res = execute_program(parse_program(MINIMAL))
    p = res.state.probabilities()
    assert p[[0, 4, 8]] == pytest.approx([1 / 3] * 3, abs=1e-12)
    assert res.max_drift < 1e-12
    assert [s.kind for s in res.steps] == ["ghz[1]", "ghz[2]"]
    (dump,) = res.dumps
    assert QuditRegisterState.from_json(dump.text) == res.state


def test_no_gates_dumps_init_state():
    res = execute_program(parse_program("system D=3 n=2\ninit |21>\ndump json\n"))
    out = QuditRegisterState.from_json(res.dumps[0].text)
    assert out.amplitude([2, 1]) == 1 and out.norm() == 1


def test_default_init_is_all_zero():
    res = execute_program(parse_program("system D=2 n=3\n"))
    assert res.state.amplitude([0, 0, 0]) == 1


def test_two_gate_program_matches_closed_form():
    text = ("system D=3 n=2\ninit |00>\n"
            f"gate B q=0 l=1 k=1 a2={2 / 3!r} lambda=[X(0,1)]\n"
            "gate B q=0 l=2 k=1 a2=0.5 lambda=[X(0,2)]\n")
    st_ = execute_program(parse_program(text)).state
    gp = ghz_params(2)
    table = coefficients_closed_form(2, [(a, b, solve_phase(1 / a)) for a, b in zip(gp.a, gp.b)])
    got = [st_.amplitude([r, r]) for r in range(3)]
    assert np.allclose(got, table.entries, atol=1e-12, rtol=0)


def test_dump_files_and_connect(tmp_path):
    bell = {"D": 2, "n": 2, "amplitudes": [[math.sqrt(0.5), 0], [0, 0], [0, 0], [math.sqrt(0.5), 0]]}
    (tmp_path / "bell.json").write_text(json.dumps(bell))
    text = "system D=2 n=2\nconnect |00> from bell.json\ndump csv out/bell.csv\ndump json out/bell.json\n"
    res = execute_program(parse_program(text), base_dir=tmp_path)
    assert (tmp_path / "out" / "bell.csv").read_text().startswith("index,digits,re,im,prob")
    written = QuditRegisterState.from_json((tmp_path / "out" / "bell.json").read_text())
    assert np.allclose(written.amplitudes, np.array([1, 0, 0, 1]) / math.sqrt(2), atol=1e-12)
    assert res.state == written


def test_runtime_errors_carry_statement_index(tmp_path):
    prog = parse_program("system D=2 n=2\ninit |00>\ndump json\nconnect |00> from missing.json\n")
    with pytest.raises(DslRuntimeError) as exc:
        execute_program(prog, base_dir=tmp_path)
    assert exc.value.index == 2 and exc.value.line == 4

    (tmp_path / "q.json").write_text(json.dumps({"D": 3, "n": 2, "amplitudes": [[1, 0]] + [[0, 0]] * 8}))
    with pytest.raises(DslRuntimeError, match="D=3"):
        execute_program(parse_program("system D=2 n=2\nconnect |00> from q.json\n"), base_dir=tmp_path)

    ghz5 = {"D": 5, "n": 1, "amplitudes": [[math.sqrt(0.2), 0]] * 5}
    (tmp_path / "g.json").write_text(json.dumps(ghz5))
    with pytest.raises(DslRuntimeError, match="BelowThreshold"):
        execute_program(parse_program("system D=5 n=1\nconnect |0> from g.json\n"), base_dir=tmp_path)


def test_oversized_register_is_runtime_error():
    with pytest.raises(DslRuntimeError):
        execute_program(parse_program("system D=1000000000 n=1000000000\n"))


def test_execution_is_bit_reproducible():
    text = (PROGRAMS / "separable_chain.braid").read_text()
    a = execute_program(parse_program(text), write_files=False)
    b = execute_program(parse_program(text), write_files=False)
    assert a.dumps[0].text == b.dumps[0].text
    assert a.state.amplitudes.tobytes() == b.state.amplitudes.tobytes()
