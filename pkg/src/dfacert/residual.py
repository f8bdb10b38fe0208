"""Myhill-Nerode classes of a regular language, seen through its minimal DFA."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .automata import Dfa, minimize, _bfs_words


@dataclass(frozen=True)
class ResidualView:
    """The residual automaton of L plus shortest class representatives.

    ``minimal`` is canonically numbered, so state ``i`` is the ``i``-th class
    discovered by breadth-first search from the class of the empty word.
    """

    minimal: Dfa
    representative: dict

    @property
    def index(self) -> int:
        return self.minimal.state_count

    def class_of(self, word) -> int:
        return self.minimal.run(word)

    def equivalent_words(self, h1, h2) -> bool:
        return self.class_of(h1) == self.class_of(h2)


def residual_view(d: Dfa) -> ResidualView:
    m = minimize(d)
    return ResidualView(m, _bfs_words(m))


def representatives_bounded(view: ResidualView, k: int) -> list:
    """``k`` pairwise inequivalent words, each of length at most ``k - 1``.

    These are the representatives of the first ``k`` classes in BFS order; a
    class at depth ``>= k`` cannot be among the first ``k`` discovered.
    """
    if not 1 <= k <= view.index:
        raise ValueError(f"k must lie in 1..{view.index}, got {k}")
    return [view.representative[q] for q in range(k)]


def distinguishing_tail(view: ResidualView, q1: int, q2: int) -> tuple:
    """Shortest (then alphabet-least) ``t`` on which ``q1`` and ``q2`` disagree."""
    if q1 == q2:
        raise ValueError("distinguishing_tail needs two different states")
    d = view.minimal
    start = (q1, q2)
    seen = {start: ()}
    queue = deque([start])
    while queue:
        p, q = queue.popleft()
        tail = seen[(p, q)]
        if (p in d.accepting) != (q in d.accepting):
            return tail
        for letter, a, b in zip(d.alphabet.letters, d.delta[p], d.delta[q]):
            if (a, b) not in seen:
                seen[(a, b)] = tail + (letter,)
                queue.append((a, b))
    raise ValueError(f"states {q1} and {q2} are equivalent; automaton is not minimal")
