import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dfacert.automata import Dfa, complement, complete, empty_dfa, prefix_tree_dfa
from dfacert.families import parity_dfa
from dfacert.game import (
    Transcript, TranscriptError, Violation, certificate_from_json, certificate_to_json,
    check_legal, check_witness, find_violation, find_violation_sep, induced_partial_dfa,
    is_bad_prefix, is_ordered, segment,
)
from dfacert.strategies import honest_prover, run_match, ScriptedRefuter

from conftest import dfas
from oracles import naive_segments, naive_violates

AB = ("a", "b")
TWO_STATE_X = "a b # a a a b # # a".split()
TWO_STATE_Y = [1, 2, 2, 1, 2, 1, 2, 2, 1, 1, 2]


def two_state_transcript(pending="a"):
    return Transcript(2, AB, 1, tuple(zip(TWO_STATE_X, TWO_STATE_Y[1:])), pending)


def even_as_squared():
    # {a^(2n)} over {a}
    return Dfa(("a",), 2, 0, [[1], [0]], {0})


def test_two_state_segments():
    t = two_state_transcript()
    anchors = [segment(t, j).reset_anchor for j in range(1, 12)]
    assert anchors == [0, 0, 0, 3, 3, 3, 3, 3, 8, 9, 9]
    words = ["".join(segment(t, j).word) for j in range(1, 12)]
    assert words == ["", "a", "ab", "", "a", "aa", "aaa", "aaab", "", "", "a"]
    assert segment(t, 3).state == 2 and segment(t, 8).state == 2
    assert segment(t, 1).word == () and segment(t, 1).state == 1
    with pytest.raises(TranscriptError):
        segment(t, 12)


def test_two_state_legality_and_agreement():
    t = two_state_transcript()
    assert check_legal(t) is None
    assert find_violation(t, parity_dfa("a")) is None
    w = find_violation(t, parity_dfa("b"))
    assert w.clause == "agreement" and w.state == 2
    assert (w.j1, w.j2) == (2, 3)
    assert w.segments == (("a",), ("a", "b"))


def test_two_state_induced_moves():
    moves = induced_partial_dfa(t := two_state_transcript()).delta
    assert moves == {(1, "a"): 2, (2, "a"): 1, (2, "b"): 2}
    assert (1, "b") not in moves
    assert induced_partial_dfa(Transcript(2, AB, 1)).delta == {}
    labels = induced_partial_dfa(t, parity_dfa("a")).labels
    assert labels == {1: "accepting", 2: "rejecting"}


def test_legality_examples():
    t = Transcript(2, AB, 1, (("a", 2), ("#", 1), ("a", 1)))
    w = check_legal(t)
    assert w.clause == "determinism" and (w.j1, w.j2) == (1, 3)
    w = check_legal(Transcript(2, AB, 1, (("#", 2),)))
    assert w == Violation("reset", 1)


def test_bad_prefix_example():
    lang = even_as_squared()
    t = Transcript(1, ("a",), 1, (), "a")
    assert find_violation(t, lang) is None
    assert is_bad_prefix(t, lang)
    assert find_violation(t.extend("a", 1), lang) is not None
    # A reset answered with the initial state only revisits the empty segment.
    assert find_violation(t.extend("#", 1), lang) is None
    assert not is_bad_prefix(Transcript(1, ("a",), 1), lang)


def test_separation_violation_examples():
    a1 = complete(prefix_tree_dfa([("a",)], AB))
    a2 = complete(prefix_tree_dfa([("b",)], AB))
    t = Transcript(1, AB, 1, (("a", 1), ("#", 1), ("b", 1), ("#", 1)))
    w = find_violation_sep(t, a1, a2)
    assert w.clause == "agreement" and w.labels == ("L1", "L2")
    assert find_violation_sep(two_state_transcript(), parity_dfa("a"), empty_dfa(AB)) is None


def test_honest_separator_transcript_has_no_sep_violation():
    a1 = complete(prefix_tree_dfa([("a",)], AB))
    a2 = complete(prefix_tree_dfa([("b",)], AB))
    sep = Dfa(AB, 2, 0, [[1, 0], [1, 1]], {1})
    letters = list("ab#ba#aab#b#")
    out = run_match(honest_prover(sep, 2), ScriptedRefuter(letters), a1, 2, 100, a2)
    assert out.witness is None
    assert find_violation_sep(out.transcript, a1, a2) is None


def test_ordered():
    assert is_ordered(two_state_transcript())
    assert not is_ordered(Transcript(2, AB, 2))
    assert not is_ordered(Transcript(3, AB, 1, (("a", 3),)))


def test_transcript_validation_and_json():
    with pytest.raises(TranscriptError):
        Transcript(2, AB, 3)
    with pytest.raises(TranscriptError):
        Transcript(2, AB, 1, (("c", 1),))
    t = two_state_transcript()
    assert Transcript.from_json(t.to_json()) == t
    assert Transcript.from_json({"k": 2, "alphabet": ["a", "b"], "y1": 1,
                                 "rounds": [{"x": "a", "y": 2}, {"x": "#", "y": 1}]}).rounds == (("a", 2), ("#", 1))
    with pytest.raises(TranscriptError):
        Transcript.from_json({"k": 2})


def test_certificate_round_trip_and_perturbation():
    t = two_state_transcript(None)
    lang = parity_dfa("b")
    w = find_violation(t, lang)
    t2, w2 = certificate_from_json(certificate_to_json(t, w))
    assert (t2, w2) == (t, w)
    assert check_witness(t2, w2, lang) is None
    bad = Violation("agreement", w.j1 + 1, w.j2, w.state, w.segments, w.labels)
    assert check_witness(t, bad, lang) is not None
    assert check_witness(t, Violation("reset", 3), lang) is not None
    assert check_witness(t, Violation("determinism", 1, 4), lang) is not None


transcripts = st.builds(
    lambda k, y1, rounds: (k, min(y1, k), [(x, min(y, k)) for x, y in rounds]),
    st.integers(1, 3), st.integers(1, 3),
    st.lists(st.tuples(st.sampled_from(["a", "b", "#"]), st.integers(1, 3)), max_size=9),
)


@settings(max_examples=400, deadline=None)
@given(transcripts, dfas(max_states=3))
def test_find_violation_matches_naive_oracle(tr, lang):
    k, y1, rounds = tr
    t = Transcript(k, AB, y1, tuple(rounds))
    xs = [x for x, _ in rounds]
    ys = [y1] + [y for _, y in rounds]
    found = find_violation(t, lang)
    assert (found is not None) == naive_violates(xs, ys, lang.accepts)
    if found is not None:
        assert check_witness(t, found, lang) is None
    # Agreement is symmetric under complement.
    assert (find_violation(t, complement(lang)) is None) == (found is None)
    # Segments match the definition.
    assert [(j, w, s) for j, w, s in naive_segments(xs, ys)] == [
        (v.position, v.word, v.state) for v in (segment(t, j) for j in range(1, len(rounds) + 2))
    ]


@settings(max_examples=300, deadline=None)
@given(transcripts, dfas(max_states=3), dfas(max_states=3))
def test_find_violation_sep_matches_naive_oracle(tr, l1, l2):
    k, y1, rounds = tr
    t = Transcript(k, AB, y1, tuple(rounds))
    xs = [x for x, _ in rounds]
    ys = [y1] + [y for _, y in rounds]
    found = find_violation_sep(t, l1, l2)
    assert (found is not None) == naive_violates(xs, ys, l1.accepts, l2.accepts)
    if found is not None:
        assert check_witness(t, found, l1, l2) is None


@settings(max_examples=200, deadline=None)
@given(transcripts, dfas(max_states=3), st.lists(st.tuples(st.sampled_from(["a", "b", "#"]),
                                                           st.integers(1, 3)), max_size=4))
def test_violations_and_bad_prefixes_are_extension_closed(tr, lang, more):
    k, y1, rounds = tr
    t = Transcript(k, AB, y1, tuple(rounds))
    longer = Transcript(k, AB, y1, tuple(rounds) + tuple((x, min(y, k)) for x, y in more))
    if find_violation(t, lang) is not None:
        assert find_violation(longer, lang) is not None
    if is_bad_prefix(t, lang):
        assert is_bad_prefix(longer, lang)


@settings(max_examples=150, deadline=None)
@given(dfas(max_states=3), st.lists(st.sampled_from(["a", "b", "#"]), max_size=10))
def test_identical_segments_share_states_when_legal(lang, letters):
    out = run_match(honest_prover(lang, lang.state_count), ScriptedRefuter(letters), lang,
                    lang.state_count, 50)
    t = out.transcript
    assert check_legal(t) is None
    seen = {}
    for j in range(1, len(t) + 2):
        v = segment(t, j)
        assert seen.setdefault(v.word, v.state) == v.state
