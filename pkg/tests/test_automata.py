import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dfacert.automata import (
    Alphabet, AutomatonError, Dfa, PartialDfa, complement, complete, equivalent,
    extend_with_reset_to_initial, extend_with_reset_to_sink, empty_dfa, intersection, is_empty,
    is_finite, isomorphic, minimize, prefix_tree_dfa, product, shortest_accepted,
    shortest_disagreement, symmetric_difference, universal_dfa,
)
from dfacert.families import ln_dfa, ln_minimal, ln_words, parity_dfa, survival_a, survival_b

from conftest import dfas
from oracles import words

AB = ("a", "b")


def test_alphabet_rejects_reset_and_duplicates():
    with pytest.raises(AutomatonError):
        Alphabet(("a", "#"))
    with pytest.raises(AutomatonError):
        Alphabet(("a", "a"))
    with pytest.raises(AutomatonError):
        Alphabet(("a", ""))


def test_dfa_rejects_bad_targets():
    with pytest.raises(AutomatonError):
        Dfa(AB, 1, 0, [[0, 1]], set())
    with pytest.raises(AutomatonError):
        Dfa(AB, 1, 1, [[0, 0]], set())


def test_complete_identity_on_complete_dfa():
    d = parity_dfa("a")
    assert complete(d) is d


def test_complete_forced_sink():
    p = PartialDfa(("a",), 1, 0, [[None]], {0})
    d = complete(p)
    assert d.state_count == 2
    assert d.accepts(()) and not d.accepts(("a",))


def test_complete_prefix_tree_matches_set():
    d = complete(prefix_tree_dfa([("a",), ("a", "b")], AB))
    assert d.state_count == 4
    for w in words(AB, 3):
        assert d.accepts(w) == (w in {("a",), ("a", "b")})


def test_accepts_l3():
    d = ln_dfa(3)
    assert d.accepts(("a", "a", "a", "b2", "b2"))
    assert not d.accepts(("a", "a", "a", "b1", "b2"))
    for w in words(d.alphabet.letters, 5):
        assert d.accepts(w) == (w in set(ln_words(3)))


def test_unknown_letter_is_an_error():
    with pytest.raises(AutomatonError):
        parity_dfa("a").accepts(("c",))


def test_product_even_even():
    both = product(parity_dfa("a"), parity_dfa("b"), lambda x, y: x and y)
    assert both.state_count == 4
    assert both.accepts(tuple("abab"))
    for w in words(AB, 4):
        assert both.accepts(w) == (w.count("a") % 2 == 0 and w.count("b") % 2 == 0)


def test_product_alphabet_mismatch():
    with pytest.raises(AutomatonError):
        intersection(parity_dfa("a"), parity_dfa("a", ("a",)))


def test_product_with_complement_is_empty():
    d = ln_dfa(3)
    assert is_empty(intersection(d, complement(d)))


def test_complement_spot_words():
    d = complement(parity_dfa("a"))
    assert not d.accepts(()) and d.accepts(("a",)) and not d.accepts(("a", "b", "a"))
    assert equivalent(complement(d), parity_dfa("a"))


def test_shortest_accepted():
    assert shortest_accepted(ln_dfa(3)) == ("a", "a", "a", "b1", "b1")
    assert shortest_accepted(empty_dfa(AB)) is None
    assert shortest_accepted(universal_dfa(AB)) == ()


def test_minimize_examples():
    for n in range(1, 7):
        assert minimize(ln_dfa(n)).state_count == 2 * n + 3
    m = ln_minimal(3)
    assert minimize(m) == m
    # Three copies of the even/odd pair; "a" flips parity and hops to the next copy.
    rows = [[2 * ((q // 2 + 1) % 3) + (1 - q % 2), q] for q in range(6)]
    redundant = Dfa(AB, 6, 0, rows, {0, 2, 4})
    assert equivalent(redundant, parity_dfa("a"))
    assert minimize(redundant).state_count == 2


def test_minimize_all_accepting():
    d = Dfa(AB, 3, 0, [[1, 2], [2, 0], [0, 1]], {0, 1, 2})
    assert minimize(d).state_count == 1


def test_shortest_disagreement_examples():
    for n in range(1, 6):
        w = shortest_disagreement(survival_a(n), survival_b(n))
        assert len(w) == 2 * n
    assert shortest_disagreement(survival_a(4), survival_b(4)) == ("a",) * 8
    d = parity_dfa("a")
    assert shortest_disagreement(d, d) is None
    assert shortest_disagreement(d, complement(d)) == ()


def test_prefix_tree_examples():
    p = prefix_tree_dfa([("a",), ("a", "b")], AB)
    assert p.state_count == 3 and len(p.accepting) == 2
    empty = prefix_tree_dfa([], AB)
    assert empty.state_count == 1 and not empty.accepting
    eps = prefix_tree_dfa([()], AB)
    assert eps.state_count == 1 and eps.accepting == {0}


def test_extend_with_reset_to_sink():
    d = extend_with_reset_to_sink(ln_dfa(3), "0")
    assert d.accepts(("a", "a", "a", "b1", "b1"))
    assert not d.accepts(("0",))
    assert not d.accepts(("0", "a", "a", "a", "b1", "b1"))
    assert is_empty(extend_with_reset_to_sink(empty_dfa(AB), "0"))
    with pytest.raises(AutomatonError):
        extend_with_reset_to_sink(parity_dfa("a"), "a")


def test_extend_with_reset_to_initial():
    only_a = complete(prefix_tree_dfa([("a",)], AB))
    d = extend_with_reset_to_initial(only_a, "0")
    assert d.accepts(("b", "0", "a"))
    assert not d.accepts(("b", "0"))
    # (Σ*·0)*·{a} by brute force.
    for w in words(("a", "b", "0"), 4):
        last_reset = max([i for i, c in enumerate(w) if c == "0"], default=-1)
        assert d.accepts(w) == (w[last_reset + 1:] == ("a",))
    eps = complete(prefix_tree_dfa([()], AB))
    assert extend_with_reset_to_initial(eps, "0").accepts(())
    assert is_empty(extend_with_reset_to_initial(empty_dfa(AB), "0"))


def test_is_finite():
    assert is_finite(ln_dfa(2))
    assert not is_finite(parity_dfa("a"))
    assert is_finite(empty_dfa(AB))


@settings(max_examples=150, deadline=None)
@given(dfas())
def test_minimize_properties(d):
    m = minimize(d)
    assert m.state_count <= d.state_count
    assert equivalent(d, m)
    assert minimize(m) == m
    for w in words(AB, 4):
        assert m.accepts(w) == d.accepts(w)


@settings(max_examples=150, deadline=None)
@given(dfas(), dfas())
def test_equivalence_is_empty_symmetric_difference(d1, d2):
    assert equivalent(d1, d2) == is_empty(symmetric_difference(d1, d2))
    if equivalent(d1, d2):
        assert minimize(d1) == minimize(d2)
        assert isomorphic(minimize(d1), minimize(d2))
    w = shortest_disagreement(d1, d2)
    if w is not None:
        assert d1.accepts(w) != d2.accepts(w)
        assert len(w) < d1.state_count * d2.state_count
        # Nothing shorter disagrees.
        for v in words(AB, len(w) - 1):
            assert d1.accepts(v) == d2.accepts(v)


@settings(max_examples=100, deadline=None)
@given(dfas(), st.data())
def test_complete_preserves_language(d, data):
    # Knock out some transitions, then complete again.
    rows = [list(r) for r in d.delta]
    for q in range(d.state_count):
        for i in range(2):
            if data.draw(st.booleans()):
                rows[q][i] = None
    p = PartialDfa(AB, d.state_count, d.initial, rows, d.accepting)
    c = complete(p)
    for w in words(AB, d.state_count + 2):
        assert c.accepts(w) == p.accepts(w)


@settings(max_examples=100, deadline=None)
@given(dfas())
def test_shortest_accepted_is_minimal(d):
    w = shortest_accepted(d)
    assert (w is None) == is_empty(d)
    if w is not None:
        assert d.accepts(w)
        shorter = [v for v in words(AB, len(w)) if d.accepts(v)]
        assert shorter[0] == w
