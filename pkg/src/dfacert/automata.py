"""Complete deterministic automata over a named alphabet.

Words are sequences of letters.  Letters are arbitrary non-empty strings
(``"a"``, ``"b1"``), so a word is normally a tuple; a plain ``str`` is
accepted wherever every letter is a single character.

State ids are ``0 .. state_count - 1``.  Everything that builds a new
automaton returns a :class:`Dfa`; :class:`PartialDfa` exists only so that
partial inputs (prefix trees, parsed files) can be read and completed.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Iterable, Optional, Sequence

RESET = "#"

Word = tuple


class AutomatonError(ValueError):
    """Raised for malformed automata or mismatched alphabets."""


@dataclass(frozen=True)
class Alphabet:
    letters: tuple

    def __post_init__(self):
        letters = tuple(self.letters)
        object.__setattr__(self, "letters", letters)
        if len(set(letters)) != len(letters):
            raise AutomatonError(f"duplicate letters in alphabet {letters!r}")
        for letter in letters:
            if not isinstance(letter, str) or not letter:
                raise AutomatonError(f"letters must be non-empty strings, got {letter!r}")
            if letter == RESET:
                raise AutomatonError(f"{RESET!r} is reserved for the reset letter")
            if any(ch.isspace() for ch in letter):
                raise AutomatonError(f"letter {letter!r} contains whitespace")

    @cached_property
    def _index(self):
        return {letter: i for i, letter in enumerate(self.letters)}

    def index(self, letter: str) -> int:
        try:
            return self._index[letter]
        except KeyError:
            raise AutomatonError(f"unknown letter {letter!r}; alphabet is {self.letters}") from None

    def __contains__(self, letter) -> bool:
        return letter in self._index

    def __iter__(self):
        return iter(self.letters)

    def __len__(self):
        return len(self.letters)

    def extended(self, letter: str) -> "Alphabet":
        if letter in self:
            raise AutomatonError(f"letter {letter!r} already in alphabet")
        return Alphabet(self.letters + (letter,))


def as_alphabet(letters) -> Alphabet:
    return letters if isinstance(letters, Alphabet) else Alphabet(tuple(letters))


def _validate_states(n, initial, accepting):
    if n < 1:
        raise AutomatonError("an automaton needs at least one state")
    if not 0 <= initial < n:
        raise AutomatonError(f"initial state {initial} out of range 0..{n - 1}")
    bad = [q for q in accepting if not 0 <= q < n]
    if bad:
        raise AutomatonError(f"accepting states {bad} out of range 0..{n - 1}")


@dataclass(frozen=True)
class Dfa:
    """A complete DFA.  ``delta[q][i]`` is the successor of ``q`` on letter ``i``."""

    alphabet: Alphabet
    state_count: int
    initial: int
    delta: tuple
    accepting: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "alphabet", as_alphabet(self.alphabet))
        object.__setattr__(self, "delta", tuple(tuple(row) for row in self.delta))
        object.__setattr__(self, "accepting", frozenset(self.accepting))
        n, width = self.state_count, len(self.alphabet)
        _validate_states(n, self.initial, self.accepting)
        if len(self.delta) != n:
            raise AutomatonError(f"expected {n} transition rows, got {len(self.delta)}")
        for q, row in enumerate(self.delta):
            if len(row) != width:
                raise AutomatonError(f"state {q}: expected {width} transitions, got {len(row)}")
            for target in row:
                if target is None or not 0 <= target < n:
                    raise AutomatonError(f"state {q}: transition target {target!r} invalid")

    @classmethod
    def from_transitions(cls, alphabet, state_count, initial, transitions, accepting=()):
        """Build from a ``{(state, letter): target}`` map, which must be total."""
        partial = PartialDfa.from_transitions(alphabet, state_count, initial, transitions, accepting)
        if not partial.is_complete():
            raise AutomatonError("transition map is not total; use PartialDfa and complete()")
        return partial.to_dfa()

    def step(self, state: int, letter: str) -> int:
        return self.delta[state][self.alphabet.index(letter)]

    def run(self, word: Iterable[str], state: Optional[int] = None) -> int:
        q = self.initial if state is None else state
        index = self.alphabet.index
        for letter in word:
            q = self.delta[q][index(letter)]
        return q

    def accepts(self, word: Iterable[str]) -> bool:
        return self.run(word) in self.accepting

    __contains__ = accepts

    def transitions(self):
        """Yield ``(state, letter, target)`` in state-then-alphabet order."""
        for q, row in enumerate(self.delta):
            for letter, target in zip(self.alphabet.letters, row):
                yield q, letter, target

    def with_accepting(self, accepting) -> "Dfa":
        return Dfa(self.alphabet, self.state_count, self.initial, self.delta, frozenset(accepting))


@dataclass(frozen=True)
class PartialDfa:
    """A DFA whose transition rows may contain ``None`` for undefined moves."""

    alphabet: Alphabet
    state_count: int
    initial: int
    delta: tuple
    accepting: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "alphabet", as_alphabet(self.alphabet))
        object.__setattr__(self, "delta", tuple(tuple(row) for row in self.delta))
        object.__setattr__(self, "accepting", frozenset(self.accepting))
        n, width = self.state_count, len(self.alphabet)
        _validate_states(n, self.initial, self.accepting)
        if len(self.delta) != n or any(len(row) != width for row in self.delta):
            raise AutomatonError("transition table has the wrong shape")
        for q, row in enumerate(self.delta):
            for target in row:
                if target is not None and not 0 <= target < n:
                    raise AutomatonError(f"state {q}: transition target {target!r} invalid")

    @classmethod
    def from_transitions(cls, alphabet, state_count, initial, transitions, accepting=()):
        alphabet = as_alphabet(alphabet)
        rows = [[None] * len(alphabet) for _ in range(state_count)]
        for (q, letter), target in transitions.items():
            if not 0 <= q < state_count:
                raise AutomatonError(f"transition source {q} out of range")
            rows[q][alphabet.index(letter)] = target
        return cls(alphabet, state_count, initial, rows, accepting)

    def is_complete(self) -> bool:
        return all(t is not None for row in self.delta for t in row)

    def to_dfa(self) -> Dfa:
        return Dfa(self.alphabet, self.state_count, self.initial, self.delta, self.accepting)

    def accepts(self, word: Iterable[str]) -> bool:
        q = self.initial
        for letter in word:
            q = self.delta[q][self.alphabet.index(letter)]
            if q is None:
                return False
        return q in self.accepting


def complete(p) -> Dfa:
    """Total version of ``p``; missing moves go to one fresh rejecting sink."""
    if isinstance(p, Dfa):
        return p
    if p.is_complete():
        return p.to_dfa()
    sink = p.state_count
    rows = [tuple(sink if t is None else t for t in row) for row in p.delta]
    rows.append((sink,) * len(p.alphabet))
    return Dfa(p.alphabet, p.state_count + 1, p.initial, rows, p.accepting)


def accepts(d: Dfa, word: Iterable[str]) -> bool:
    return d.accepts(word)


def _check_same_alphabet(d1, d2):
    if d1.alphabet != d2.alphabet:
        raise AutomatonError(
            f"alphabet mismatch: {d1.alphabet.letters} vs {d2.alphabet.letters}"
        )


def product(d1: Dfa, d2: Dfa, combiner: Callable[[bool, bool], bool]) -> Dfa:
    """Reachable product automaton; a pair state accepts iff ``combiner`` says so."""
    _check_same_alphabet(d1, d2)
    start = (d1.initial, d2.initial)
    ids = {start: 0}
    order = [start]
    rows = []
    queue = deque([start])
    while queue:
        p, q = queue.popleft()
        row = []
        for a, b in zip(d1.delta[p], d2.delta[q]):
            pair = (a, b)
            if pair not in ids:
                ids[pair] = len(order)
                order.append(pair)
                queue.append(pair)
            row.append(ids[pair])
        rows.append(row)
    acc = {
        i for i, (p, q) in enumerate(order)
        if combiner(p in d1.accepting, q in d2.accepting)
    }
    return Dfa(d1.alphabet, len(order), 0, rows, acc)


def intersection(d1, d2):
    return product(d1, d2, lambda x, y: x and y)


def union(d1, d2):
    return product(d1, d2, lambda x, y: x or y)


def difference(d1, d2):
    return product(d1, d2, lambda x, y: x and not y)


def symmetric_difference(d1, d2):
    return product(d1, d2, lambda x, y: x != y)


def complement(d: Dfa) -> Dfa:
    return d.with_accepting(set(range(d.state_count)) - d.accepting)


def _bfs_words(d: Dfa, start: Optional[int] = None):
    """Shortest, then alphabet-least, word reaching each reachable state."""
    start = d.initial if start is None else start
    words = {start: ()}
    queue = deque([start])
    while queue:
        q = queue.popleft()
        for letter, target in zip(d.alphabet.letters, d.delta[q]):
            if target not in words:
                words[target] = words[q] + (letter,)
                queue.append(target)
    return words


def reachable_states(d: Dfa) -> set:
    return set(_bfs_words(d))


def shortest_accepted(d: Dfa) -> Optional[Word]:
    """Minimum-length accepted word, ties broken by alphabet order."""
    start = d.initial
    if start in d.accepting:
        return ()
    parent = {start: None}
    queue = deque([start])
    while queue:
        q = queue.popleft()
        for letter, target in zip(d.alphabet.letters, d.delta[q]):
            if target in parent:
                continue
            parent[target] = (q, letter)
            if target in d.accepting:
                word = []
                node = target
                while parent[node] is not None:
                    node, letter_ = parent[node]
                    word.append(letter_)
                return tuple(reversed(word))
            queue.append(target)
    return None


def is_empty(d: Dfa) -> bool:
    return shortest_accepted(d) is None


def is_finite(d: Dfa) -> bool:
    """True iff L(d) is finite: no cycle through a live (co-reachable) reachable state."""
    reach = reachable_states(d)
    live = set(d.accepting & reach)
    changed = True
    while changed:
        changed = False
        for q in reach - live:
            if any(t in live for t in d.delta[q]):
                live.add(q)
                changed = True
    # Kahn's algorithm on the live subgraph.
    indeg = {q: 0 for q in live}
    for q in live:
        for t in d.delta[q]:
            if t in live:
                indeg[t] += 1
    queue = deque(q for q, n in indeg.items() if n == 0)
    seen = 0
    while queue:
        q = queue.popleft()
        seen += 1
        for t in d.delta[q]:
            if t in live:
                indeg[t] -= 1
                if indeg[t] == 0:
                    queue.append(t)
    return seen == len(live)


def canonical(d: Dfa) -> Dfa:
    """Drop unreachable states and renumber by breadth-first discovery order."""
    order = list(_bfs_words(d))
    ids = {q: i for i, q in enumerate(order)}
    rows = [[ids[t] for t in d.delta[q]] for q in order]
    acc = {ids[q] for q in order if q in d.accepting}
    return Dfa(d.alphabet, len(order), 0, rows, acc)


def minimize(d: Dfa) -> Dfa:
    """Canonical minimal DFA (Moore refinement, then BFS numbering)."""
    d = canonical(d)
    block = [1 if q in d.accepting else 0 for q in range(d.state_count)]
    while True:
        signatures = {}
        refined = []
        for q in range(d.state_count):
            sig = (block[q],) + tuple(block[t] for t in d.delta[q])
            refined.append(signatures.setdefault(sig, len(signatures)))
        if len(signatures) == len(set(block)):
            break
        block = refined
    ids = {}
    block = [ids.setdefault(b, len(ids)) for b in block]
    n = len(ids)
    rows = [None] * n
    for q in range(d.state_count):
        if rows[block[q]] is None:
            rows[block[q]] = [block[t] for t in d.delta[q]]
    acc = {block[q] for q in d.accepting}
    return canonical(Dfa(d.alphabet, n, block[d.initial], rows, acc))


def index(d: Dfa) -> int:
    """Number of Myhill-Nerode classes of L(d)."""
    return minimize(d).state_count


def shortest_disagreement(d1: Dfa, d2: Dfa) -> Optional[Word]:
    return shortest_accepted(symmetric_difference(d1, d2))


def equivalent(d1: Dfa, d2: Dfa) -> bool:
    return shortest_disagreement(d1, d2) is None


def is_subset(d1: Dfa, d2: Dfa) -> bool:
    """L(d1) is contained in L(d2)."""
    return is_empty(difference(d1, d2))


def isomorphic(d1: Dfa, d2: Dfa) -> bool:
    return canonical(d1) == canonical(d2)


def prefix_tree_dfa(words: Iterable[Sequence[str]], alphabet) -> PartialDfa:
    """Partial automaton whose states are the prefixes of ``words``; L = words."""
    alphabet = as_alphabet(alphabet)
    words = {tuple(w) for w in words}
    for w in words:
        for letter in w:
            alphabet.index(letter)
    prefixes = {w[:i] for w in words for i in range(len(w) + 1)} | {()}
    order = sorted(prefixes, key=lambda p: (len(p), [alphabet.index(c) for c in p]))
    ids = {p: i for i, p in enumerate(order)}
    rows = []
    for p in order:
        rows.append([ids.get(p + (letter,)) for letter in alphabet.letters])
    return PartialDfa(alphabet, len(order), 0, rows, {ids[w] for w in words})


def finite_language_dfa(words, alphabet) -> Dfa:
    return complete(prefix_tree_dfa(words, alphabet))


def _rejecting_sink(d: Dfa) -> Optional[int]:
    for q in range(d.state_count):
        if q not in d.accepting and all(t == q for t in d.delta[q]):
            return q
    return None


def extend_with_reset_to_sink(d: Dfa, fresh: str) -> Dfa:
    """Add letter ``fresh`` leading every state into a rejecting sink."""
    alphabet = d.alphabet.extended(fresh)
    sink = _rejecting_sink(d)
    rows = [list(row) for row in d.delta]
    n = d.state_count
    if sink is None:
        sink = n
        n += 1
        rows.append([sink] * len(d.alphabet))
    for row in rows:
        row.append(sink)
    return Dfa(alphabet, n, d.initial, rows, d.accepting)


def extend_with_reset_to_initial(d: Dfa, fresh: str) -> Dfa:
    """Add letter ``fresh`` leading every state back to the initial state."""
    alphabet = d.alphabet.extended(fresh)
    rows = [list(row) + [d.initial] for row in d.delta]
    return Dfa(alphabet, d.state_count, d.initial, rows, d.accepting)


def restrict_alphabet(d: Dfa, alphabet) -> Dfa:
    """Drop the letters not in ``alphabet`` (which must be a sub-alphabet)."""
    alphabet = as_alphabet(alphabet)
    cols = [d.alphabet.index(letter) for letter in alphabet.letters]
    rows = [[row[c] for c in cols] for row in d.delta]
    return Dfa(alphabet, d.state_count, d.initial, rows, d.accepting)


def universal_dfa(alphabet) -> Dfa:
    alphabet = as_alphabet(alphabet)
    return Dfa(alphabet, 1, 0, [[0] * len(alphabet)], {0})


def empty_dfa(alphabet) -> Dfa:
    alphabet = as_alphabet(alphabet)
    return Dfa(alphabet, 1, 0, [[0] * len(alphabet)], set())


def words_up_to(alphabet, length: int):
    """All words of length <= ``length`` in length-then-alphabet order."""
    alphabet = as_alphabet(alphabet)
    layer = [()]
    for _ in range(length + 1):
        yield from layer
        layer = [w + (c,) for w in layer for c in alphabet.letters]
