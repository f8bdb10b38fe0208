"""Exact solution of the recognizability and separation games at desk scale.

The reachable knowledge graph (see :mod:`dfacert.knowledge`) is explored
with Prover restricted to ordered answers, then solved by backward
induction: a node's rank is the least number of Refuter letters that
forces a violation from it against every Prover reply, or ``None`` if
Prover can avoid violations forever.

For recognition there is a cheaper first step.  A Prover that follows the
residual automaton is checked against every Refuter letter sequence by
:func:`min_rounds_to_refute`; if no sequence beats it, that exhaustive check
is itself a certificate that Prover wins, and the full graph is not built.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from typing import Optional

from .automata import Dfa
from .game import Judge, Transcript
from .knowledge import Arena, Canonizer, ScaleError
from .strategies import (
    Prover, Refuter, ScriptedProver, ProtocolError, greedy_residual_prover, min_rounds_to_refute,
)


@dataclass
class _Graph:
    nodes: list
    index: dict
    succ: list  # succ[v][x] is a list of successor ids, -1 meaning violation
    parent: list  # parent[v] = (u, x, y) for the BFS tree, None at the root


def _explore(arena: Arena, max_nodes: int) -> _Graph:
    root = arena.root()
    nodes, index, succ, parent = [root], {root: 0}, [], [None]
    letters = range(len(arena.letters))
    v = 0
    while v < len(nodes):
        node = nodes[v]
        row = []
        for x in letters:
            out = []
            forced = arena.forced(node, x)
            replies = (forced,) if forced else arena.responses(node)
            for y in replies:
                nxt = arena.advance(node, x, y)
                if nxt is None:
                    out.append(-1)
                    continue
                w = index.get(nxt)
                if w is None:
                    if len(nodes) >= max_nodes:
                        raise ScaleError(f"game graph exceeded {max_nodes} knowledge states")
                    w = len(nodes)
                    index[nxt] = w
                    nodes.append(nxt)
                    parent.append((v, x, y))
                out.append(w)
            row.append(out)
        succ.append(row)
        v += 1
    return _Graph(nodes, index, succ, parent)


def _ranks(g: _Graph) -> list:
    n = len(g.nodes)
    preds = [[] for _ in range(n)]
    pending = []
    worst = []
    rank = [None] * n
    frontier = []
    for v, row in enumerate(g.succ):
        cnt_row, worst_row = [], []
        for x, out in enumerate(row):
            live = [w for w in out if w >= 0]
            for w in set(live):
                preds[w].append((v, x))
            cnt_row.append(len(set(live)))
            worst_row.append(0)
            if not live and rank[v] is None:
                rank[v] = 1
                frontier.append(v)
        pending.append(cnt_row)
        worst.append(worst_row)
    level = frontier
    while level:
        nxt_level = []
        for w in level:
            for v, x in preds[w]:
                pending[v][x] -= 1
                worst[v][x] = max(worst[v][x], rank[w])
                if pending[v][x] == 0 and rank[v] is None:
                    rank[v] = worst[v][x] + 1
                    nxt_level.append(v)
        level = nxt_level
    return rank


@dataclass
class GameSolution:
    """Solved game.

    Either ``graph``/``rank`` hold the full backward-induction solution, or
    ``certified_prover`` holds a Prover already shown to be unbeatable.
    """

    arena: Arena
    graph: Optional[_Graph] = None
    rank: Optional[list] = None
    certified_prover: Optional[Prover] = None

    @property
    def refuter_wins(self) -> bool:
        return self.rank is not None and self.rank[0] is not None

    @property
    def prover_wins(self) -> bool:
        return not self.refuter_wins

    @property
    def value(self) -> Optional[int]:
        """Optimal worst-case number of Refuter letters, or ``None``."""
        return self.rank[0] if self.rank is not None else None

    @property
    def size(self) -> int:
        return len(self.graph.nodes) if self.graph is not None else 0

    def best_letter(self, v: int) -> int:
        best, best_x = None, 0
        for x, out in enumerate(self.graph.succ[v]):
            r = 0
            for w in out:
                rw = 0 if w < 0 else self.rank[w]
                if rw is None:
                    r = None
                    break
                r = max(r, rw)
            if r is not None and (best is None or r < best):
                best, best_x = r, x
        return best_x

    def prover(self) -> Prover:
        if self.certified_prover is not None:
            return self.certified_prover.clone()
        return SolverProver(self)

    def refuter(self) -> "SolverRefuter":
        if not self.refuter_wins:
            raise ValueError("Prover wins this game; there is no winning refuter")
        return SolverRefuter(self)

    def transcript_to(self, v: int) -> Transcript:
        """The ordered play along the BFS tree that reaches node ``v``."""
        rounds = []
        while self.graph.parent[v] is not None:
            u, x, y = self.graph.parent[v]
            rounds.append((self.arena.letters[x], y))
            v = u
        return Transcript(self.arena.k, self.arena.judge.alphabet, 1, tuple(reversed(rounds)))

    def bad_prefixes(self):
        """Pending transcripts whose every ordered answer completes a violation."""
        if self.graph is None or self.graph.nodes[0] is None:
            return
        for v, row in enumerate(self.graph.succ):
            for x, out in enumerate(row):
                if all(w < 0 for w in out):
                    yield self.transcript_to(v).with_pending(self.arena.letters[x])


def solve_game(lang: Dfa, k: int, lang2: Optional[Dfa] = None, max_nodes: int = 400_000,
               shortcut: bool = True) -> GameSolution:
    """Decide who wins the recognizability (or, with ``lang2``, separation) game."""
    judge = Judge.recognition(lang) if lang2 is None else Judge.separation_of(lang, lang2)
    arena = Arena(judge, k)
    if arena.root() is None:
        # The empty segment already carries both labels.
        g = _Graph([None], {}, [[[-1] for _ in arena.letters]], [None])
        return GameSolution(arena, g, [0])
    if shortcut and lang2 is None:
        candidate = greedy_residual_prover(lang, k)
        if min_rounds_to_refute(candidate, lang, k, max_nodes=max_nodes) is None:
            return GameSolution(arena, certified_prover=candidate)
    g = _explore(arena, max_nodes)
    return GameSolution(arena, g, _ranks(g))


class SolverProver(Prover):
    """Ordered Prover that stays in the safe region, or else delays the loss.

    In a safe node it plays the lowest answer that stays safe.  Otherwise it
    plays the answer with the largest remaining rank, lowest first on ties.
    """

    def __init__(self, solution: GameSolution):
        self.sol = solution
        self.k = solution.arena.k
        self.name = "solver"
        self.v = 0

    def start(self) -> int:
        self.v = 0
        return 1

    def _score(self, w):
        if w < 0:
            return -1
        r = self.sol.rank[w]
        return float("inf") if r is None else r

    def respond(self, letter: str) -> int:
        arena = self.sol.arena
        if self.v < 0:
            return 1
        node = self.sol.graph.nodes[self.v]
        x = arena.letter_id(letter)
        forced = arena.forced(node, x)
        replies = [forced] if forced else list(arena.responses(node))
        out = self.sol.graph.succ[self.v][x]
        best_y, best_w, best_s = replies[0], out[0], self._score(out[0])
        for y, w in zip(replies, out):
            s = self._score(w)
            if s > best_s:
                best_y, best_w, best_s = y, w, s
        self.v = best_w
        return best_y

    def key(self):
        return self.v


class SolverRefuter(Refuter):
    """Rank-minimizing Refuter; renames the opponent's states to ordered form."""

    def __init__(self, solution: GameSolution):
        self.sol = solution
        self.name = "solver"
        self.v = 0
        self.x = None
        self.canon = Canonizer()

    def start(self, y1: int) -> None:
        self.canon = Canonizer()
        self.canon(y1)
        self.v = 0

    def next_letter(self) -> Optional[str]:
        if self.v is None or self.v < 0:
            return None
        self.x = self.sol.best_letter(self.v)
        return self.sol.arena.letters[self.x]

    def observe(self, y: int) -> None:
        arena = self.sol.arena
        node = arena.advance(self.sol.graph.nodes[self.v], self.x, self.canon(y))
        self.v = -1 if node is None else self.sol.graph.index[node]


def best_response_prover(refuter: Refuter, lang: Dfa, k: int, lang2: Optional[Dfa] = None,
                         horizon: int = 10_000, max_nodes: int = 400_000) -> ScriptedProver:
    """The ordered Prover that survives longest against a fixed deterministic Refuter.

    The Refuter must support ``clone`` and ``key``.  The search is exact: it
    maximizes the number of letters answered before the first violation
    (a Refuter Stop or the horizon counts as surviving).  The result replays
    the optimal answers and refuses to continue if the Refuter deviates.
    """
    judge = Judge.recognition(lang) if lang2 is None else Judge.separation_of(lang, lang2)
    arena = Arena(judge, k)
    root = arena.root()
    if root is None:
        return _ReplayProver([1], ())
    r0 = refuter.clone()
    r0.start(1)
    memo = {}

    def best(r, node, depth):
        # Returns (letters survived, answers, letters) from this point.
        key = (r.key(), node)
        if key in memo:
            return memo[key]
        if len(memo) >= max_nodes:
            raise ScaleError(f"best-response search exceeded {max_nodes} states")
        probe = r.clone()
        letter = probe.next_letter()
        if letter is None or depth >= horizon:
            memo[key] = result = (float("inf"), (), ())
            return result
        x = arena.letter_id(letter)
        forced = arena.forced(node, x)
        replies = (forced,) if forced else arena.responses(node)
        result = None
        for y in replies:
            nxt = arena.advance(node, x, y)
            if nxt is None:
                cand = (1, (y,), (letter,))
            else:
                after = probe.clone()
                after.observe(y)
                score, ys, xs = best(after, nxt, depth + 1)
                cand = (score + 1, (y,) + ys, (letter,) + xs)
            if result is None or cand[0] > result[0]:
                result = cand
        memo[key] = result
        return result

    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, 4 * horizon + 100))
    try:
        _, ys, xs = best(r0, root, 0)
    finally:
        sys.setrecursionlimit(limit)
    return _ReplayProver([1] + list(ys), xs)


class _ReplayProver(ScriptedProver):
    def __init__(self, states, letters):
        super().__init__(states)
        self.expected = tuple(letters)
        self.name = "best-response"

    def respond(self, letter: str) -> int:
        i = self.pos - 1
        if i < len(self.expected) and self.expected[i] != letter:
            raise ProtocolError(self.name, f"expected letter {self.expected[i]!r}, got {letter!r}")
        return super().respond(letter)
