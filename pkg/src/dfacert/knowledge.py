"""Compact knowledge states for searching over Prover replies.

After any violation-free prefix, the future of the game depends only on

* the partial transition function fixed so far,
* the label mask collected by each Prover state,
* the current Prover state, and
* the judge state of the current segment.

These are packed into a hashable tuple ``(delta, labels, current, seg, top)``
where ``delta`` is a flat tuple indexed by ``(state - 1) * |Sigma| + letter``
holding ``0`` for "not fixed yet", and ``top`` is the largest state used.
Letters are integers: ``0..|Sigma|-1`` for input letters and ``|Sigma|`` for
the reset letter.  ``advance`` returns ``None`` exactly when the step
completes a violation.
"""

from __future__ import annotations

from .automata import RESET
from .game import Judge


class ScaleError(RuntimeError):
    """A search exceeded its configured size limit."""


class Arena:
    def __init__(self, judge: Judge, k: int):
        if k < 1:
            raise ValueError("k must be positive")
        self.judge = judge
        self.k = k
        self.sigma = len(judge.alphabet)
        self.reset = self.sigma
        self.letters = tuple(judge.alphabet.letters) + (RESET,)

    def letter_id(self, letter: str) -> int:
        return self.reset if letter == RESET else self.judge.alphabet.index(letter)

    def root(self, y1: int = 1):
        """Knowledge after Prover's first move, or ``None`` if it already violates."""
        seg = self.judge.initial
        mask = self.judge.masks[seg]
        if mask == 3:
            return None
        labels = [0] * self.k
        labels[y1 - 1] = mask
        return ((0,) * (self.k * self.sigma), tuple(labels), y1, seg, y1)

    def advance(self, node, x: int, y: int, y1: int = 1):
        delta, labels, cur, seg, top = node
        if x == self.reset:
            if y != y1:
                return None
            seg = self.judge.initial
        else:
            i = (cur - 1) * self.sigma + x
            fixed = delta[i]
            if fixed:
                if fixed != y:
                    return None
            else:
                delta = delta[:i] + (y,) + delta[i + 1:]
            seg = self.judge.delta[seg][x]
        mask = self.judge.masks[seg]
        old = labels[y - 1]
        if mask and old | mask != old:
            if old | mask == 3:
                return None
            labels = labels[:y - 1] + (old | mask,) + labels[y:]
        return (delta, labels, y, seg, top if y <= top else y)

    def responses(self, node):
        """Ordered Prover answers: a used state or the next fresh one."""
        return range(1, min(node[4] + 1, self.k) + 1)

    def forced(self, node, x: int, y1: int = 1):
        """The answer legality forces, if any (reset or an already fixed move)."""
        if x == self.reset:
            return y1
        fixed = node[0][(node[2] - 1) * self.sigma + x]
        return fixed or None


class Canonizer:
    """Renames an arbitrary Prover's states by order of first appearance."""

    def __init__(self):
        self.names = {}

    def __call__(self, y: int) -> int:
        if y not in self.names:
            self.names[y] = len(self.names) + 1
        return self.names[y]
