import pytest
from hypothesis import given, settings

from dfacert.automata import universal_dfa
from dfacert.families import ln_dfa, ln_r_state, parity_dfa
from dfacert.residual import distinguishing_tail, representatives_bounded, residual_view

from conftest import dfas
from oracles import nerode_classes

AB = ("a", "b")


def test_even_as_view_matches_brute_force_partition():
    v = residual_view(parity_dfa("a"))
    assert v.index == 2
    assert sorted(v.representative.values()) == [(), ("a",)]
    classes = nerode_classes(parity_dfa("a").accepts, AB, 3, 3)
    assert len(classes) == 2
    for cls in classes:
        assert len({v.class_of(h) for h in cls}) == 1


def test_universal_language_has_index_one():
    assert residual_view(universal_dfa(AB)).index == 1


def test_l3_index():
    assert residual_view(ln_dfa(3)).index == 9


def test_representatives_bounded():
    v = residual_view(parity_dfa("a"))
    assert representatives_bounded(v, 2) == [(), ("a",)]
    assert representatives_bounded(v, 1) == [()]
    with pytest.raises(ValueError):
        representatives_bounded(v, 3)
    l3 = residual_view(ln_dfa(3))
    heads = representatives_bounded(l3, 8)
    assert len(heads) == 8 and all(len(h) <= 7 for h in heads)
    classes = [l3.class_of(h) for h in heads]
    for i in range(8):
        for j in range(i + 1, 8):
            t = distinguishing_tail(l3, classes[i], classes[j])
            assert l3.minimal.accepts(heads[i] + t) != l3.minimal.accepts(heads[j] + t)


def test_distinguishing_tail_examples():
    v = residual_view(parity_dfa("a"))
    assert distinguishing_tail(v, v.class_of(()), v.class_of(("a",))) == ()
    l3 = residual_view(ln_dfa(3))
    r1, r2 = ln_r_state(l3.minimal, 3, 1), ln_r_state(l3.minimal, 3, 2)
    assert distinguishing_tail(l3, r1, r2) == ("b1",)
    q0, q1 = l3.class_of(()), l3.class_of(("a",))
    t = distinguishing_tail(l3, q0, q1)
    assert l3.minimal.accepts(t) != l3.minimal.accepts(("a",) + t)
    with pytest.raises(ValueError):
        distinguishing_tail(l3, r1, r1)


@settings(max_examples=150, deadline=None)
@given(dfas())
def test_view_invariants(d):
    v = residual_view(d)
    n = v.index
    assert v.representative[v.minimal.initial] == ()
    for q, h in v.representative.items():
        assert len(h) <= n - 1
        assert v.class_of(h) == q
    for k in range(1, n + 1):
        heads = representatives_bounded(v, k)
        assert len({v.class_of(h) for h in heads}) == k
        assert all(len(h) <= k - 1 for h in heads)
    for q1 in range(n):
        for q2 in range(n):
            if q1 != q2:
                t = distinguishing_tail(v, q1, q2)
                # The contract allows N; BFS over pairs never needs more than N - 1.
                assert len(t) <= n - 1
                h1, h2 = v.representative[q1], v.representative[q2]
                assert d.accepts(h1 + t) != d.accepts(h2 + t)


@settings(max_examples=80, deadline=None)
@given(dfas(max_states=3))
def test_class_of_matches_nerode_oracle(d):
    v = residual_view(d)
    # With at most 3 states, heads and tails of length 3 separate all classes.
    for cls in nerode_classes(d.accepts, AB, 3, 3):
        assert len({v.class_of(h) for h in cls}) == 1
    assert len(nerode_classes(d.accepts, AB, 3, 3)) == v.index
