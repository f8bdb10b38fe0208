import pytest
from hypothesis import given, settings

from dfacert.automata import Dfa, PartialDfa
from dfacert.families import ln_minimal
from dfacert.textio import DfaFormatError, format_dfa, parse_dfa, read_dfa, write_dfa

from conftest import dfas

EVEN_A = """\
; even number of a's
alphabet: a b
states: 2
initial: 0
accepting: 0
0 a 1
0 b 0
1 a 0
1 b 1
"""


def test_parse_example():
    d = parse_dfa(EVEN_A)
    assert isinstance(d, Dfa)
    assert d.accepts(("a", "b", "a")) and not d.accepts(("a",))


def test_missing_transition_gives_partial():
    text = EVEN_A.replace("1 b 1\n", "")
    assert isinstance(parse_dfa(text), PartialDfa)


@pytest.mark.parametrize("text, line", [
    (EVEN_A.replace("states: 2", "states: two"), 3),
    (EVEN_A.replace("1 b 1", "1 c 1"), 9),
    (EVEN_A.replace("1 b 1", "1 b 5"), 9),
    (EVEN_A.replace("1 b 1", "1 b"), 9),
    (EVEN_A + "1 b 0\n", 10),
    (EVEN_A.replace("initial: 0", "start: 0"), 4),
], ids=["bad-count", "bad-letter", "bad-target", "short-line", "conflict", "unknown-header"])
def test_errors_carry_line_numbers(text, line):
    with pytest.raises(DfaFormatError) as info:
        parse_dfa(text, "x.dfa")
    assert info.value.line == line
    assert str(info.value).startswith(f"x.dfa:{line}:")


def test_missing_header():
    with pytest.raises(DfaFormatError):
        parse_dfa("alphabet: a\nstates: 1\n0 a 0\n")


@settings(max_examples=100, deadline=None)
@given(dfas())
def test_round_trip(d):
    assert parse_dfa(format_dfa(d)) == d


def test_file_round_trip(tmp_path):
    d = ln_minimal(2)
    write_dfa(d, tmp_path / "l2.dfa")
    assert read_dfa(tmp_path / "l2.dfa") == d
