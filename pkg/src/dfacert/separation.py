"""Deciding, certifying and refuting separation by small DFAs.

A language ``L`` separates ``(L1, L2)`` when ``L1`` is contained in ``L`` and
``L`` misses ``L2``.  For a fixed transition structure the right accepting
sets are determined by which structure states words of ``L1`` and ``L2``
reach, so the search only enumerates structures.
"""

from __future__ import annotations

import enum
import itertools
from collections import deque
from dataclasses import dataclass
from typing import Optional

from .automata import (
    RESET, Dfa, complement, complete, extend_with_reset_to_sink, intersection,
    is_empty, is_finite, is_subset, minimize, prefix_tree_dfa, _check_same_alphabet,
)
from .knowledge import ScaleError
from .strategies import Refuter


class Mode(enum.Enum):
    PLAIN = "plain"
    STRICT_BOTH = "strict"
    STRICT_LEFT = "strict-left"
    STRICT_RIGHT = "strict-right"


@dataclass(frozen=True)
class SeparationInstance:
    a1: Dfa
    a2: Dfa
    k: int
    mode: Mode = Mode.PLAIN

    def __post_init__(self):
        _check_same_alphabet(self.a1, self.a2)
        if self.k < 1:
            raise ValueError("k must be positive")

    @property
    def disjoint(self) -> bool:
        return is_empty(intersection(self.a1, self.a2))


@dataclass(frozen=True)
class SeparatorResult:
    instance: SeparationInstance
    separator: Optional[Dfa]
    reason: str  # "found", "overlap" or "exhausted"
    structures_checked: int = 0

    @property
    def separable(self) -> bool:
        return self.separator is not None

    def refuter(self, lazy: bool = False) -> "ExposeRefuter":
        """A Refuter for the plain separation game; needs a plain refutation."""
        if self.separable or self.instance.mode is not Mode.PLAIN:
            raise ValueError("a separation refuter needs a plain-mode refutation")
        return ExposeRefuter(self.instance.a1, self.instance.a2, self.instance.k, lazy=lazy)


# -- reachability -----------------------------------------------------------

def _pair_bfs(a: Dfa, b: Dfa, start_a: Optional[int] = None, edges=None):
    """Breadth-first search over ``a x b``; yields ``(p, q, word)`` in order.

    ``edges`` optionally replaces ``a``'s transitions by a partial map
    ``{(state, letter_index): target}``.
    """
    start = (a.initial if start_a is None else start_a, b.initial)
    words = {start: ()}
    queue = deque([start])
    while queue:
        p, q = queue.popleft()
        yield p, q, words[(p, q)]
        for i, letter in enumerate(a.alphabet.letters):
            t = a.delta[p][i] if edges is None else edges.get((p, i))
            if t is None:
                continue
            nxt = (t, b.delta[q][i])
            if nxt not in words:
                words[nxt] = words[(p, q)] + (letter,)
                queue.append(nxt)


def reachable_via(a: Dfa, aprime: Dfa) -> frozenset:
    """States of ``a`` reached by some word of ``L(aprime)``."""
    _check_same_alphabet(a, aprime)
    return frozenset(p for p, q, _ in _pair_bfs(a, aprime) if q in aprime.accepting)


def is_separator(a: Dfa, a1: Dfa, a2: Dfa) -> bool:
    return reachable_via(a, a1) <= a.accepting and not (reachable_via(a, a2) & a.accepting)


def structure_separable(structure: Dfa, a1: Dfa, a2: Dfa) -> Optional[frozenset]:
    """An accepting set making ``structure`` a separator, or ``None``.

    The accepting set of ``structure`` is ignored.
    """
    f1, f2 = reachable_via(structure, a1), reachable_via(structure, a2)
    return None if f1 & f2 else f1


# -- search -----------------------------------------------------------------

def canonical_structures(alphabet, m: int):
    """Complete transition tables on exactly ``m`` states, one per isomorphism class.

    Each table is numbered in breadth-first order from state 0: filling
    entries state by state and letter by letter, every entry is an existing
    state or the next unused one.  Only tables using all ``m`` states are
    kept, so every DFA whose reachable part has ``m`` states appears once.
    """
    width = len(alphabet)
    total = m * width
    cells = [0] * total

    def fill(pos, used):
        if pos == total:
            if used == m:
                yield tuple(tuple(cells[q * width:(q + 1) * width]) for q in range(m))
            return
        # State pos // width must already be discovered before its row is filled.
        if pos // width >= used:
            return
        for t in range(min(used + 1, m)):
            cells[pos] = t
            yield from fill(pos + 1, max(used, t + 1))

    yield from fill(0, 1)


def _choose_accepting(q_all, f1, f2, g1, g2, mode):
    free = q_all - f1 - f2
    if mode is Mode.PLAIN:
        return f1
    if mode is Mode.STRICT_LEFT:
        f = f1 | free
        return f if f & g1 else None
    if mode is Mode.STRICT_RIGHT:
        return f1 if (q_all - f1) & g2 else None
    for q1 in sorted((f1 | free) & g1):
        for q2 in sorted((q_all - f1) & g2):
            if q1 != q2:
                return f1 | ({q1} if q1 in free else set())
    return None


def _verify(sep: Dfa, a1: Dfa, a2: Dfa, mode: Mode) -> bool:
    if not (is_subset(a1, sep) and is_empty(intersection(sep, a2))):
        return False
    left = not is_subset(sep, a1)
    right = not is_empty(intersection(complement(sep), complement(a2)))
    return {
        Mode.PLAIN: True,
        Mode.STRICT_LEFT: left,
        Mode.STRICT_RIGHT: right,
        Mode.STRICT_BOTH: left and right,
    }[mode]


def find_separator(inst: SeparationInstance, max_structures: int = 2_000_000) -> SeparatorResult:
    """First separator with at most ``k`` states in canonical order, if any."""
    if not inst.disjoint:
        return SeparatorResult(inst, None, "overlap")
    a1, a2 = minimize(inst.a1), minimize(inst.a2)
    c1, c2 = complement(a1), complement(a2)
    alphabet = a1.alphabet
    checked = 0
    for m in range(1, inst.k + 1):
        q_all = frozenset(range(m))
        for rows in canonical_structures(alphabet, m):
            checked += 1
            if checked > max_structures:
                raise ScaleError(f"separator search exceeded {max_structures} structures")
            structure = Dfa(alphabet, m, 0, rows)
            f1, f2 = reachable_via(structure, a1), reachable_via(structure, a2)
            if f1 & f2:
                continue
            g1 = reachable_via(structure, c1) if inst.mode in (Mode.STRICT_LEFT, Mode.STRICT_BOTH) else frozenset()
            g2 = reachable_via(structure, c2) if inst.mode in (Mode.STRICT_RIGHT, Mode.STRICT_BOTH) else frozenset()
            acc = _choose_accepting(q_all, f1, f2, g1, g2, inst.mode)
            if acc is None:
                continue
            sep = structure.with_accepting(acc)
            if not _verify(sep, inst.a1, inst.a2, inst.mode):
                raise AssertionError("separator failed independent verification")
            return SeparatorResult(inst, sep, "found", checked)
    return SeparatorResult(inst, None, "exhausted", checked)


def brute_force_separable(inst: SeparationInstance) -> bool:
    """Unpruned check over every complete DFA with exactly ``k`` states."""
    if not inst.disjoint:
        return False
    alphabet = inst.a1.alphabet
    k, width = inst.k, len(alphabet)
    for flat in itertools.product(range(k), repeat=k * width):
        rows = [flat[q * width:(q + 1) * width] for q in range(k)]
        for initial in range(k):
            for bits in range(1 << k):
                acc = {q for q in range(k) if bits >> q & 1}
                if _verify(Dfa(alphabet, k, initial, rows, acc), inst.a1, inst.a2, inst.mode):
                    return True
    return False


# -- reductions -------------------------------------------------------------

def identification_to_separation(s1, s2, alphabet, k: int = 1, mode: Mode = Mode.PLAIN) -> SeparationInstance:
    """Sample sets as a separation instance over their prefix-tree automata."""
    s1, s2 = {tuple(w) for w in s1}, {tuple(w) for w in s2}
    if s1 & s2:
        raise ValueError(f"sample sets overlap on {sorted(s1 & s2)}")
    a1 = complete(prefix_tree_dfa(sorted(s1), alphabet))
    a2 = complete(prefix_tree_dfa(sorted(s2), alphabet))
    return SeparationInstance(a1, a2, k, mode)


def separation_to_strict(a1: Dfa, a2: Dfa, fresh: str):
    """Add a fresh letter leading to a rejecting sink; needs finite nonempty languages."""
    for name, d in (("first", a1), ("second", a2)):
        if is_empty(d):
            raise ValueError(f"{name} language is empty")
        if not is_finite(d):
            raise ValueError(f"{name} language is infinite")
    return extend_with_reset_to_sink(a1, fresh), extend_with_reset_to_sink(a2, fresh)


# -- refuter ----------------------------------------------------------------

def expose_bound(k: int, sigma: int, n1: int, n2: int) -> int:
    return k * (k + 1) * sigma + k * n1 + k * n2 + 2


class ExposeRefuter(Refuter):
    """Make Prover commit to a whole transition table, then exhibit a clash.

    Phase 1 repeatedly plays ``w s #`` where ``w`` is a shortest word over
    the known moves reaching the first state (in breadth-first order) that
    lacks a known move on letter ``s``.  Once the table is total, phase 2
    picks a state reached both by a word ``w1`` of ``L1`` and a word ``w2`` of
    ``L2``, minimizing ``|w1| + |w2|``, and plays ``w1 # w2 #``.

    With ``lazy`` set, phase 2 starts as soon as such a state is reachable
    over the moves known so far.
    """

    def __init__(self, a1: Dfa, a2: Dfa, k: int, check: bool = True, lazy: bool = False):
        _check_same_alphabet(a1, a2)
        if check and find_separator(SeparationInstance(a1, a2, k)).separable:
            raise ValueError(f"the languages are separable by a {k}-DFA; no refuter exists")
        self.a1, self.a2 = minimize(a1), minimize(a2)
        self.k = k
        self.lazy = lazy
        self.name = "expose"
        self.alphabet = a1.alphabet
        self.start(1)

    def start(self, y1: int) -> None:
        self.y1 = y1
        self.moves = {}
        self.script = deque()
        self.cur = y1
        self.phase = 1
        self.pending_move = None
        self.emitted = []
        self.witness_words = None

    @property
    def bound(self) -> int:
        return expose_bound(self.k, len(self.alphabet), self.a1.state_count, self.a2.state_count)

    def _frontier(self):
        words = {self.y1: ()}
        queue = deque([self.y1])
        while queue:
            p = queue.popleft()
            for i, letter in enumerate(self.alphabet.letters):
                t = self.moves.get((p, i))
                if t is None:
                    return words[p], i
                if t not in words:
                    words[t] = words[p] + (letter,)
                    queue.append(t)
        return None

    def _clash(self):
        """``(w1, w2)`` for the best state reached by both languages, if any."""
        states = sorted({p for p, _ in self.moves} | {t for t in self.moves.values()} | {self.y1})
        ids = {p: i for i, p in enumerate(states)}
        edges = {(ids[p], i): ids[t] for (p, i), t in self.moves.items()}
        # A stand-in DFA carrying only the alphabet and the start state.
        shell = Dfa(self.alphabet, len(states), ids[self.y1],
                    [[0] * len(self.alphabet) for _ in states])
        first = {}
        for d, slot in ((self.a1, 0), (self.a2, 1)):
            for p, q, w in _pair_bfs(shell, d, edges=edges):
                if q in d.accepting:
                    first.setdefault(p, [None, None])
                    if first[p][slot] is None:
                        first[p][slot] = w
        best = None
        for p in sorted(first):
            w1, w2 = first[p]
            if w1 is not None and w2 is not None:
                if best is None or len(w1) + len(w2) < len(best[0]) + len(best[1]):
                    best = (w1, w2)
        return best

    def _plan(self):
        if self.phase == 1:
            if self.lazy and self.moves:
                clash = self._clash()
                if clash is not None:
                    self._phase_two(clash)
                    return
            frontier = self._frontier()
            if frontier is not None:
                w, i = frontier
                self.script.extend((letter, False) for letter in w)
                self.script.append((self.alphabet.letters[i], True))
                self.script.append((RESET, False))
                return
            clash = self._clash()
            if clash is None:
                self.phase = 3
                return
            self._phase_two(clash)

    def _phase_two(self, clash):
        self.phase = 2
        w1, w2 = clash
        self.witness_words = (w1, w2)
        self.script.extend((letter, False) for letter in w1)
        self.script.append((RESET, False))
        self.script.extend((letter, False) for letter in w2)
        self.script.append((RESET, False))

    def next_letter(self) -> Optional[str]:
        if not self.script:
            self._plan()
        if not self.script:
            return None
        letter, fresh = self.script.popleft()
        if fresh:
            self.pending_move = (self.cur, self.alphabet.index(letter))
        self.emitted.append(letter)
        return letter

    def observe(self, y: int) -> None:
        if self.pending_move is not None:
            self.moves.setdefault(self.pending_move, y)
            self.pending_move = None
        self.cur = y

    def key(self):
        return (self.phase, self.cur, tuple(sorted(self.moves.items())), tuple(self.script))


def expose_refuter(a1: Dfa, a2: Dfa, k: int, check: bool = True, lazy: bool = False) -> ExposeRefuter:
    return ExposeRefuter(a1, a2, k, check=check, lazy=lazy)
