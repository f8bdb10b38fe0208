"""Transcripts of the Prover/Refuter game and their violations.

A transcript stores Prover's first state ``y1`` separately and then one
round ``(x_j, y_{j+1})`` per Refuter letter, so ``rounds[j - 1]`` holds the
letter at position ``j`` together with Prover's answer to it.  Positions are
1-based throughout, as are Prover states (``1..k``).

A transcript may also carry a ``pending`` Refuter letter that Prover has not
answered yet.  It never influences violations, but it matters for bad
prefixes: the position it occupies is already committed.

Segment classification goes through a :class:`Judge`, a small automaton
whose states carry a two-bit label mask.  For recognition bit 1 means "in L"
and bit 2 "not in L"; for separation bit 1 means "in L1" and bit 2 "in L2".
A Prover state whose segments accumulate both bits is an agreement violation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .automata import RESET, Alphabet, Dfa, PartialDfa, as_alphabet, minimize, AutomatonError


class TranscriptError(ValueError):
    pass


# -- judges -----------------------------------------------------------------

@dataclass(frozen=True)
class Judge:
    alphabet: Alphabet
    initial: int
    delta: tuple
    masks: tuple
    separation: bool = False

    def step(self, state: int, letter: str) -> int:
        return self.delta[state][self.alphabet.index(letter)]

    def mask_of(self, word) -> int:
        q = self.initial
        for letter in word:
            q = self.step(q, letter)
        return self.masks[q]

    @property
    def state_count(self) -> int:
        return len(self.delta)

    @property
    def label_names(self):
        return ("L1", "L2") if self.separation else ("in", "out")

    @classmethod
    def recognition(cls, lang: Dfa) -> "Judge":
        m = minimize(lang)
        masks = tuple(1 if q in m.accepting else 2 for q in range(m.state_count))
        return cls(m.alphabet, m.initial, m.delta, masks)

    @classmethod
    def separation_of(cls, lang1: Dfa, lang2: Dfa) -> "Judge":
        if lang1.alphabet != lang2.alphabet:
            raise AutomatonError("separation languages must share an alphabet")
        d1, d2 = minimize(lang1), minimize(lang2)
        start = (d1.initial, d2.initial)
        ids, order, rows = {start: 0}, [start], []
        i = 0
        while i < len(order):
            p, q = order[i]
            row = []
            for a, b in zip(d1.delta[p], d2.delta[q]):
                if (a, b) not in ids:
                    ids[(a, b)] = len(order)
                    order.append((a, b))
                row.append(ids[(a, b)])
            rows.append(row)
            i += 1
        masks = [(1 if p in d1.accepting else 0) | (2 if q in d2.accepting else 0)
                 for p, q in order]
        return _reduce_judge(cls(d1.alphabet, 0, tuple(map(tuple, rows)), tuple(masks), True))

    @classmethod
    def legality_only(cls, alphabet) -> "Judge":
        alphabet = as_alphabet(alphabet)
        return cls(alphabet, 0, ((0,) * len(alphabet),), (0,))


def _reduce_judge(j: Judge) -> Judge:
    """Merge judge states with equal future mask behaviour."""
    block = list(j.masks)
    while True:
        sigs = {}
        refined = [sigs.setdefault((block[q],) + tuple(block[t] for t in j.delta[q]), len(sigs))
                   for q in range(j.state_count)]
        if len(sigs) == len(set(block)):
            break
        block = refined
    ids = {}
    for q in range(j.state_count):
        ids.setdefault(block[q], len(ids))
    n = len(ids)
    rows, masks = [None] * n, [0] * n
    for q in range(j.state_count):
        b = ids[block[q]]
        if rows[b] is None:
            rows[b] = tuple(ids[block[t]] for t in j.delta[q])
            masks[b] = j.masks[q]
    return Judge(j.alphabet, ids[block[j.initial]], tuple(rows), tuple(masks), j.separation)


# -- transcripts ------------------------------------------------------------

@dataclass(frozen=True)
class Transcript:
    k: int
    alphabet: Alphabet
    y1: int
    rounds: tuple = ()
    pending: Optional[str] = None

    def __post_init__(self):
        object.__setattr__(self, "alphabet", as_alphabet(self.alphabet))
        object.__setattr__(self, "rounds", tuple((x, int(y)) for x, y in self.rounds))
        if self.k < 1:
            raise TranscriptError("k must be positive")
        self._check_state(self.y1)
        for x, y in self.rounds:
            self._check_letter(x)
            self._check_state(y)
        if self.pending is not None:
            self._check_letter(self.pending)

    def _check_state(self, y):
        if not isinstance(y, int) or not 1 <= y <= self.k:
            raise TranscriptError(f"state {y!r} outside 1..{self.k}")

    def _check_letter(self, x):
        if x != RESET and x not in self.alphabet:
            raise TranscriptError(f"letter {x!r} not in alphabet or {RESET!r}")

    def __len__(self):
        return len(self.rounds)

    @property
    def x(self) -> tuple:
        return tuple(x for x, _ in self.rounds)

    @property
    def y(self) -> tuple:
        return (self.y1,) + tuple(y for _, y in self.rounds)

    def extend(self, x: str, y: int) -> "Transcript":
        return Transcript(self.k, self.alphabet, self.y1, self.rounds + ((x, y),))

    def with_pending(self, x: Optional[str]) -> "Transcript":
        return Transcript(self.k, self.alphabet, self.y1, self.rounds, x)

    def prefix(self, rounds: int) -> "Transcript":
        return Transcript(self.k, self.alphabet, self.y1, self.rounds[:rounds])

    def to_json(self) -> dict:
        obj = {
            "k": self.k,
            "alphabet": list(self.alphabet.letters),
            "y1": self.y1,
            "rounds": [{"x": x, "y": y} for x, y in self.rounds],
        }
        if self.pending is not None:
            obj["pending"] = self.pending
        return obj

    @classmethod
    def from_json(cls, obj: dict) -> "Transcript":
        try:
            rounds = tuple((r["x"], r["y"]) for r in obj["rounds"])
            return cls(obj["k"], Alphabet(tuple(obj["alphabet"])), obj["y1"], rounds,
                       obj.get("pending"))
        except (KeyError, TypeError) as exc:
            raise TranscriptError(f"malformed transcript JSON: {exc}") from None


@dataclass(frozen=True)
class SegmentView:
    position: int
    reset_anchor: int
    word: tuple
    state: int


def segment(t: Transcript, j: int) -> SegmentView:
    """The word ``w^j`` between the last reset before ``j`` and ``j``."""
    if not 1 <= j <= len(t) + 1:
        raise TranscriptError(f"position {j} outside 1..{len(t) + 1}")
    xs = t.x
    anchor = 0
    for i in range(j - 1, 0, -1):
        if xs[i - 1] == RESET:
            anchor = i
            break
    return SegmentView(j, anchor, tuple(xs[anchor:j - 1]), t.y[j - 1])


def is_ordered(t: Transcript) -> bool:
    ys = t.y
    if ys[0] != 1:
        return False
    top = 1
    for y in ys[1:]:
        if y > top + 1:
            return False
        top = max(top, y)
    return True


# -- violations -------------------------------------------------------------

@dataclass(frozen=True)
class Violation:
    """Which clause of the violation language fired, and where.

    ``reset``: ``x_{j1} = #`` but ``y_{j1+1} != y_1``.
    ``determinism``: positions ``j1 < j2`` read the same letter from the same
    state but were answered differently.
    ``agreement``: ``w^{j1}`` carries the first label and ``w^{j2}`` the second
    (in/out of L, or in L1/in L2) yet both map to ``state``.
    """

    clause: str
    j1: int
    j2: Optional[int] = None
    state: Optional[int] = None
    segments: tuple = ()
    labels: tuple = ()

    def to_json(self) -> dict:
        if self.clause == "reset":
            return {"clause": "reset", "j": self.j1}
        obj = {"clause": self.clause, "j1": self.j1, "j2": self.j2}
        if self.clause == "agreement":
            obj["state"] = self.state
            obj["segments"] = [list(s) for s in self.segments]
            obj["labels"] = list(self.labels)
        return obj

    @classmethod
    def from_json(cls, obj: dict) -> "Violation":
        try:
            clause = obj["clause"]
            if clause == "reset":
                return cls("reset", int(obj["j"]))
            if clause == "determinism":
                return cls("determinism", int(obj["j1"]), int(obj["j2"]))
            if clause == "agreement":
                return cls("agreement", int(obj["j1"]), int(obj["j2"]), obj.get("state"),
                           tuple(tuple(s) for s in obj.get("segments", ())),
                           tuple(obj.get("labels", ())))
        except (KeyError, TypeError, ValueError) as exc:
            raise TranscriptError(f"malformed witness JSON: {exc}") from None
        raise TranscriptError(f"unknown clause {obj.get('clause')!r}")


class ViolationTracker:
    """Incremental violation detection, one round at a time.

    The first violation found is kept; later rounds are recorded but not
    analysed.  Within one round a reset violation is reported before a
    determinism violation, and both before an agreement violation.
    """

    def __init__(self, judge: Judge, k: int, y1: int):
        self.judge = judge
        self.k = k
        self.xs = []
        self.ys = [y1]
        self.moves = {}
        self.first_label = {}
        self.seg = judge.initial
        self.anchor = 0
        self.violation = None
        self._label(1, y1)

    @property
    def y1(self):
        return self.ys[0]

    @property
    def rounds(self) -> int:
        return len(self.xs)

    def _segment(self, j):
        anchor = 0
        for i in range(j - 1, 0, -1):
            if self.xs[i - 1] == RESET:
                anchor = i
                break
        return tuple(self.xs[anchor:j - 1])

    def _label(self, pos, state):
        mask = self.judge.masks[self.seg]
        if not mask:
            return
        slots = self.first_label.setdefault(state, [None, None])
        for bit in (0, 1):
            if mask >> bit & 1 and slots[bit] is None:
                slots[bit] = pos
        if slots[0] is not None and slots[1] is not None:
            j1, j2 = slots
            self.violation = Violation(
                "agreement", j1, j2, state,
                (self._segment(j1), self._segment(j2)), self.judge.label_names,
            )

    def push(self, x: str, y: int) -> Optional[Violation]:
        j = len(self.xs) + 1
        prev = self.ys[-1]
        self.xs.append(x)
        self.ys.append(y)
        if self.violation is not None:
            return self.violation
        if x == RESET:
            self.anchor = j
            self.seg = self.judge.initial
            if y != self.y1:
                self.violation = Violation("reset", j)
                return self.violation
        else:
            key = (prev, x)
            if key in self.moves:
                j1 = self.moves[key]
                if self.ys[j1] != y:
                    self.violation = Violation("determinism", j1, j)
                    return self.violation
            else:
                self.moves[key] = j
            self.seg = self.judge.step(self.seg, x)
        self._label(j + 1, y)
        return self.violation


def _track(t: Transcript, judge: Judge) -> ViolationTracker:
    if judge.alphabet != t.alphabet:
        raise TranscriptError(
            f"language alphabet {judge.alphabet.letters} differs from transcript "
            f"alphabet {t.alphabet.letters}"
        )
    tracker = ViolationTracker(judge, t.k, t.y1)
    for x, y in t.rounds:
        if tracker.push(x, y) is not None:
            break
    return tracker


def check_legal(t: Transcript) -> Optional[Violation]:
    return _track(t, Judge.legality_only(t.alphabet)).violation


def find_violation(t: Transcript, lang: Dfa) -> Optional[Violation]:
    return _track(t, Judge.recognition(lang)).violation


def find_violation_sep(t: Transcript, lang1: Dfa, lang2: Dfa) -> Optional[Violation]:
    return _track(t, Judge.separation_of(lang1, lang2)).violation


def _judge_for(lang, lang2):
    return Judge.recognition(lang) if lang2 is None else Judge.separation_of(lang, lang2)


def is_bad_prefix(t: Transcript, lang: Dfa, lang2: Optional[Dfa] = None) -> bool:
    """Every one-letter continuation of ``t`` is an informative bad prefix.

    With a pending letter the only freedom left is Prover's answer to it;
    without one, both the Refuter letter and the answer range freely.
    """
    judge = _judge_for(lang, lang2)
    base = _track(t, judge)
    if base.violation is not None:
        return True
    letters = [t.pending] if t.pending is not None else list(t.alphabet) + [RESET]
    for x in letters:
        for y in range(1, t.k + 1):
            if _track(t.extend(x, y), judge).violation is None:
                return False
    return True


@dataclass(frozen=True)
class InducedAutomaton:
    """The partial transition function and state labels a legal transcript fixes."""

    k: int
    alphabet: Alphabet
    initial: int
    delta: dict
    labels: dict = field(default_factory=dict)

    def to_partial_dfa(self) -> PartialDfa:
        """0-based partial DFA; Prover state ``q`` becomes state ``q - 1``."""
        rows = [[None] * len(self.alphabet) for _ in range(self.k)]
        for (q, letter), target in self.delta.items():
            rows[q - 1][self.alphabet.index(letter)] = target - 1
        acc = {q - 1 for q, lab in self.labels.items() if lab == "accepting"}
        return PartialDfa(self.alphabet, self.k, self.initial - 1, rows, acc)


def induced_partial_dfa(t: Transcript, lang: Optional[Dfa] = None) -> InducedAutomaton:
    legality = check_legal(t)
    if legality is not None:
        raise TranscriptError(f"transcript is illegal: {legality.clause} at {legality.j1}")
    ys = t.y
    delta = {}
    for j, x in enumerate(t.x, start=1):
        if x != RESET:
            delta[(ys[j - 1], x)] = ys[j]
    labels = {}
    if lang is not None:
        for j in range(1, len(t) + 2):
            view = segment(t, j)
            lab = "accepting" if lang.accepts(view.word) else "rejecting"
            prior = labels.get(view.state)
            labels[view.state] = lab if prior in (None, lab) else "conflict"
    return InducedAutomaton(t.k, t.alphabet, t.y1, delta, labels)


def check_witness(t: Transcript, w: Violation, lang: Dfa, lang2: Optional[Dfa] = None) -> Optional[str]:
    """Check a claimed witness against the transcript directly.

    Returns ``None`` when the witness is valid, otherwise an explanation.
    """
    xs, ys, m = t.x, t.y, len(t)
    if w.clause == "reset":
        j = w.j1
        if not 1 <= j <= m:
            return f"reset position {j} outside 1..{m}"
        if xs[j - 1] != RESET:
            return f"x_{j} is {xs[j - 1]!r}, not the reset letter"
        if ys[j] == ys[0]:
            return f"y_{j + 1} equals y_1; no reset violation"
        return None
    if w.clause == "determinism":
        j1, j2 = w.j1, w.j2
        if j2 is None or not (1 <= j1 <= m and 1 <= j2 <= m) or j1 == j2:
            return "determinism positions out of range"
        if xs[j1 - 1] != xs[j2 - 1] or xs[j1 - 1] == RESET:
            return f"x_{j1} and x_{j2} are not the same input letter"
        if ys[j1 - 1] != ys[j2 - 1]:
            return f"y_{j1} and y_{j2} differ"
        if ys[j1] == ys[j2]:
            return f"y_{j1 + 1} and y_{j2 + 1} agree; no determinism violation"
        return None
    if w.clause == "agreement":
        j1, j2 = w.j1, w.j2
        if j2 is None or not (1 <= j1 <= m + 1 and 1 <= j2 <= m + 1):
            return "agreement positions out of range"
        s1, s2 = segment(t, j1), segment(t, j2)
        if s1.state != s2.state:
            return f"w^{j1} and w^{j2} map to different states"
        if w.state is not None and w.state != s1.state:
            return f"claimed state {w.state} but segments map to {s1.state}"
        if w.segments and (tuple(w.segments[0]), tuple(w.segments[1])) != (s1.word, s2.word):
            return "claimed segment words do not match the transcript"
        if lang2 is None:
            if not lang.accepts(s1.word):
                return f"w^{j1} is not in L"
            if lang.accepts(s2.word):
                return f"w^{j2} is in L"
        else:
            if not lang.accepts(s1.word):
                return f"w^{j1} is not in L1"
            if not lang2.accepts(s2.word):
                return f"w^{j2} is not in L2"
        return None
    return f"unknown clause {w.clause!r}"


def certificate_to_json(t: Transcript, w: Violation) -> dict:
    obj = t.to_json()
    obj["witness"] = w.to_json()
    return obj


def certificate_from_json(obj: dict):
    if "witness" not in obj:
        raise TranscriptError("certificate has no witness object")
    return Transcript.from_json(obj), Violation.from_json(obj["witness"])
