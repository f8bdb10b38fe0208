"""Prover and Refuter strategies, the match runner and offline certificates."""

from __future__ import annotations

import copy
import random
from collections import deque
from dataclasses import dataclass
from typing import Optional, Sequence

from .automata import RESET, Dfa
from .game import Judge, Transcript, Violation, ViolationTracker
from .knowledge import Arena, ScaleError
from .residual import distinguishing_tail, representatives_bounded, residual_view


class ProtocolError(RuntimeError):
    """A strategy made an out-of-range move."""

    def __init__(self, role: str, message: str):
        super().__init__(f"{role}: {message}")
        self.role = role


# -- interfaces -------------------------------------------------------------

class Prover:
    """Answers Refuter letters with states in ``1..k``."""

    name = "prover"

    def start(self) -> int:
        raise NotImplementedError

    def respond(self, letter: str) -> int:
        raise NotImplementedError

    def key(self):
        """Hashable summary of the internal state, used by searches."""
        raise NotImplementedError(f"{self.name} does not expose its state")

    def clone(self) -> "Prover":
        return copy.deepcopy(self)


class Refuter:
    """Emits letters of the extended alphabet; ``None`` means Stop."""

    name = "refuter"

    def start(self, y1: int) -> None:
        pass

    def next_letter(self) -> Optional[str]:
        raise NotImplementedError

    def observe(self, y: int) -> None:
        pass

    def key(self):
        """Hashable summary of the internal state, used by searches."""
        raise NotImplementedError(f"{self.name} does not expose its state")

    def clone(self) -> "Refuter":
        return copy.deepcopy(self)


@dataclass(frozen=True)
class MatchOutcome:
    transcript: Transcript
    witness: Optional[Violation]
    rounds: int
    stopped_by: str  # "violation", "refuter", or "horizon"

    @property
    def refuter_won(self) -> bool:
        return self.witness is not None


def run_match(prover: Prover, refuter: Refuter, lang: Dfa, k: int, max_rounds: int,
              lang2: Optional[Dfa] = None) -> MatchOutcome:
    """Play until the first violation, a Refuter Stop, or ``max_rounds`` letters."""
    if k < 1 or max_rounds < 1:
        raise ValueError("k and max_rounds must be positive")
    alphabet = lang.alphabet
    judge = Judge.recognition(lang) if lang2 is None else Judge.separation_of(lang, lang2)
    y1 = _checked_state(prover.start(), k)
    tracker = ViolationTracker(judge, k, y1)
    refuter.start(y1)
    rounds = []
    stopped = "horizon"
    while tracker.violation is None and len(rounds) < max_rounds:
        x = refuter.next_letter()
        if x is None:
            stopped = "refuter"
            break
        if x != RESET and x not in alphabet:
            raise ProtocolError(refuter.name, f"letter {x!r} outside the extended alphabet")
        y = _checked_state(prover.respond(x), k, prover.name)
        rounds.append((x, y))
        tracker.push(x, y)
        refuter.observe(y)
    if tracker.violation is not None:
        stopped = "violation"
    t = Transcript(k, alphabet, y1, tuple(rounds))
    return MatchOutcome(t, tracker.violation, len(rounds), stopped)


def _checked_state(y, k, who="prover"):
    if not isinstance(y, int) or not 1 <= y <= k:
        raise ProtocolError(who, f"state {y!r} outside 1..{k}")
    return y


# -- provers ----------------------------------------------------------------

class HonestProver(Prover):
    """Follows the runs of a DFA; DFA state ``q`` is announced as ``q + 1``."""

    def __init__(self, d: Dfa, k: int):
        if d.state_count > k:
            raise ValueError(f"DFA has {d.state_count} states, more than k={k}")
        self.dfa = d
        self.k = k
        self.name = "honest"
        self.state = d.initial

    def start(self) -> int:
        self.state = self.dfa.initial
        return self.state + 1

    def respond(self, letter: str) -> int:
        self.state = self.dfa.initial if letter == RESET else self.dfa.step(self.state, letter)
        return self.state + 1

    def key(self):
        return self.state

    def clone(self) -> "HonestProver":
        other = copy.copy(self)
        return other


def honest_prover(d: Dfa, k: int) -> HonestProver:
    return HonestProver(d, k)


class GreedyResidualProver(Prover):
    """Tracks the true residual class and names classes by first appearance.

    Once ``k`` names are in use, a newly seen class borrows the lowest
    named state whose recorded label (membership of the first class named
    there) matches the class's own membership, or state 1 if none does.  A
    borrowed name is kept for that class from then on.
    """

    def __init__(self, lang: Dfa, k: int):
        if k < 1:
            raise ValueError("k must be positive")
        self.view = residual_view(lang)
        self.k = k
        self.name = "greedy"
        self.names = {}
        self.labels = {}
        self.cls = self.view.minimal.initial

    def _name(self, cls: int) -> int:
        if cls in self.names:
            return self.names[cls]
        accepting = cls in self.view.minimal.accepting
        if len(self.labels) < self.k:
            name = len(self.labels) + 1
            self.labels[name] = accepting
        else:
            name = next((s for s in sorted(self.labels) if self.labels[s] == accepting), 1)
        self.names[cls] = name
        return name

    def start(self) -> int:
        self.cls = self.view.minimal.initial
        return self._name(self.cls)

    def respond(self, letter: str) -> int:
        m = self.view.minimal
        self.cls = m.initial if letter == RESET else m.step(self.cls, letter)
        return self._name(self.cls)

    def key(self):
        return (self.cls, tuple(sorted(self.names.items())))


def greedy_residual_prover(lang: Dfa, k: int) -> GreedyResidualProver:
    return GreedyResidualProver(lang, k)


class ScriptedProver(Prover):
    """Replays a fixed answer sequence ``y1, y2, ...``."""

    def __init__(self, states: Sequence[int]):
        if not states:
            raise ValueError("a scripted prover needs at least y1")
        self.states = list(states)
        self.pos = 0
        self.name = "scripted"

    def start(self) -> int:
        self.pos = 1
        return self.states[0]

    def respond(self, letter: str) -> int:
        if self.pos >= len(self.states):
            raise ProtocolError(self.name, "script exhausted")
        y = self.states[self.pos]
        self.pos += 1
        return y

    def key(self):
        return self.pos


class ScriptedRefuter(Refuter):
    """Plays a fixed letter sequence, then stops."""

    def __init__(self, letters: Sequence[str]):
        self.letters = list(letters)
        self.pos = 0
        self.name = "scripted"

    def start(self, y1: int) -> None:
        self.pos = 0

    def next_letter(self) -> Optional[str]:
        if self.pos >= len(self.letters):
            return None
        x = self.letters[self.pos]
        self.pos += 1
        return x

    def key(self):
        return self.pos


class RandomProver(Prover):
    """Uniformly random answers from a seeded generator."""

    def __init__(self, k: int, seed: int = 0):
        self.k = k
        self.rng = random.Random(seed)
        self.name = "random"

    def start(self) -> int:
        return self.rng.randint(1, self.k)

    def respond(self, letter: str) -> int:
        return self.rng.randint(1, self.k)


class RandomRefuter(Refuter):
    """Random letters, with a reset played with probability ``reset_rate``."""

    def __init__(self, alphabet, seed: int = 0, reset_rate: float = 0.2):
        self.letters = tuple(alphabet)
        self.rng = random.Random(seed)
        self.reset_rate = reset_rate
        self.name = "random"

    def next_letter(self) -> Optional[str]:
        if self.rng.random() < self.reset_rate:
            return RESET
        return self.rng.choice(self.letters)


# -- online refuter ---------------------------------------------------------

class OnlineRefuter(Refuter):
    """Expose ``k + 1`` inequivalent heads, then replay a colliding pair with its tail.

    Phase 1 plays ``h_1 # h_2 # ... h_{k+1} #`` and records the state each
    head is mapped to.  Phase 2 picks the lexicographically smallest pair
    ``(i, j)`` mapped to the same state and plays ``h_i t # h_j t #`` where
    ``t`` distinguishes their classes.
    """

    def __init__(self, lang: Dfa, k: int):
        self.view = residual_view(lang)
        if k >= self.view.index:
            raise ValueError(f"k={k} is not below the index {self.view.index}; no refuter exists")
        self.k = k
        self.name = "online"
        self.heads = representatives_bounded(self.view, k + 1)
        self._reset_script()

    def _reset_script(self):
        self.script = deque()
        self.head_end = {}
        for i, h in enumerate(self.heads):
            self.script.extend(h)
            self.head_end[len(self.script)] = i
            self.script.append(RESET)
        self.emitted = 0
        self.mapped = {}
        self.phase = 1
        self.last_y = None

    def start(self, y1: int) -> None:
        self._reset_script()
        self.last_y = y1
        if 0 in self.head_end:
            self.mapped[self.head_end[0]] = y1

    def collision(self):
        for i in range(len(self.heads)):
            for j in range(i + 1, len(self.heads)):
                if self.mapped.get(i) is not None and self.mapped.get(i) == self.mapped.get(j):
                    return i, j
        return None

    def next_letter(self) -> Optional[str]:
        if not self.script and self.phase == 1:
            self.phase = 2
            pair = self.collision()
            if pair is None:
                return None
            i, j = pair
            cls = self.view.class_of
            t = distinguishing_tail(self.view, cls(self.heads[i]), cls(self.heads[j]))
            self.script.extend(tuple(self.heads[i]) + tuple(t) + (RESET,)
                               + tuple(self.heads[j]) + tuple(t) + (RESET,))
        if not self.script:
            return None
        self.emitted += 1
        return self.script.popleft()

    def observe(self, y: int) -> None:
        self.last_y = y
        if self.phase == 1 and self.emitted in self.head_end:
            self.mapped[self.head_end[self.emitted]] = y

    def key(self):
        return (self.phase, self.emitted, tuple(sorted(self.mapped.items())), tuple(self.script))

    def clone(self) -> "OnlineRefuter":
        other = copy.copy(self)
        other.script = deque(self.script)
        other.mapped = dict(self.mapped)
        return other


def online_refuter(lang: Dfa, k: int) -> OnlineRefuter:
    return OnlineRefuter(lang, k)


def online_bound(k: int, n_index: int) -> int:
    return k * (k + 1) + 2 * (k + n_index) + k + 3


# -- offline certificates ---------------------------------------------------

def universal_blocks(lang: Dfa, k: int) -> list:
    """The pair blocks ``((i, j), h_i t #, h_j t #)`` in lexicographic pair order."""
    view = residual_view(lang)
    if k >= view.index:
        raise ValueError(f"k={k} is not below the index {view.index}; no bad prefix exists")
    heads = representatives_bounded(view, k + 1)
    blocks = []
    for i in range(len(heads)):
        for j in range(i + 1, len(heads)):
            t = distinguishing_tail(view, view.class_of(heads[i]), view.class_of(heads[j]))
            blocks.append(((i, j), tuple(heads[i]) + t + (RESET,), tuple(heads[j]) + t + (RESET,)))
    return blocks


def build_universal_bad_prefix(lang: Dfa, k: int) -> tuple:
    word = []
    for _, first, second in universal_blocks(lang, k):
        word.extend(first)
        word.extend(second)
    return tuple(word)


def offline_bound(k: int, n_index: int) -> int:
    return (k + n_index + 1) * k * (k + 1)


def verify_universal(x: Sequence[str], lang: Dfa, k: int, max_k: int = 3, max_len: int = 60) -> bool:
    """Whether every Prover reply sequence to ``x`` ends in a violation.

    The last letter of ``x`` is never answered, as in a word of length
    ``|x|`` over pairs.  Replies are searched in ordered form only, which is
    complete because violations are invariant under renaming states.
    """
    if k > max_k and len(x) > max_len:
        raise ScaleError(f"verify_universal limited to k <= {max_k} or |x| <= {max_len}")
    x = tuple(x)
    if not x:
        return False
    arena = Arena(Judge.recognition(lang), k)
    ids = [arena.letter_id(c) for c in x]
    root = arena.root()
    if root is None:
        return True
    last = len(x) - 1
    dead = set()
    stack = [(0, root, iter(arena.responses(root)))]
    while stack:
        pos, node, replies = stack[-1]
        if pos == last:
            return False
        for y in replies:
            nxt = arena.advance(node, ids[pos], y)
            if nxt is not None and (pos + 1, nxt) not in dead:
                stack.append((pos + 1, nxt, iter(arena.responses(nxt))))
                break
        else:
            dead.add((pos, node))
            stack.pop()
    return True


# -- refutation length against a fixed prover -------------------------------

def min_rounds_to_refute(prover: Prover, lang: Dfa, k: int, max_nodes: int = 200_000) -> Optional[int]:
    """Fewest Refuter letters that force a violation against ``prover``.

    Breadth-first search over the prover's internal state paired with the
    game knowledge.  Returns ``None`` when no letter sequence ever wins.
    """
    arena = Arena(Judge.recognition(lang), k)
    p0 = prover.clone()
    y1 = _checked_state(p0.start(), k, p0.name)
    root = arena.root(y1)
    if root is None:
        return 0
    seen = {(p0.key(), root)}
    queue = deque([(p0, root, 0)])
    while queue:
        p, node, depth = queue.popleft()
        for x, letter in enumerate(arena.letters):
            q = p.clone()
            y = _checked_state(q.respond(letter), k, q.name)
            nxt = arena.advance(node, x, y, y1)
            if nxt is None:
                return depth + 1
            key = (q.key(), nxt)
            if key not in seen:
                if len(seen) >= max_nodes:
                    raise ScaleError(f"refutation search exceeded {max_nodes} states")
                seen.add(key)
                queue.append((q, nxt, depth + 1))
    return None
