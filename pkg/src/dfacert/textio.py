"""Line-oriented text format for automata.

::

    ; comment
    alphabet: a b c
    states: 9
    initial: 0
    accepting: 7 8
    0 a 1
    ...

Missing transitions yield a :class:`PartialDfa`.
"""

from __future__ import annotations

from pathlib import Path
from typing import Union

from .automata import AutomatonError, Dfa, PartialDfa


class DfaFormatError(ValueError):
    def __init__(self, source: str, line: int, message: str):
        super().__init__(f"{source}:{line}: {message}")
        self.source = source
        self.line = line


_HEADERS = ("alphabet", "states", "initial", "accepting")


def parse_dfa(text: str, source: str = "<string>") -> Union[Dfa, PartialDfa]:
    headers = {}
    transitions = {}
    last_line = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        last_line = lineno
        line = raw.strip()
        if not line or line.startswith(";"):
            continue
        if ":" in line:
            name, _, value = line.partition(":")
            name = name.strip().lower()
            if name not in _HEADERS:
                raise DfaFormatError(source, lineno, f"unknown header {name!r}")
            if name in headers:
                raise DfaFormatError(source, lineno, f"duplicate header {name!r}")
            headers[name] = (lineno, value.split())
            continue
        parts = line.split()
        if len(parts) != 3:
            raise DfaFormatError(source, lineno, "expected 'source letter target'")
        src, letter, dst = parts
        try:
            key = (int(src), letter)
            target = int(dst)
        except ValueError:
            raise DfaFormatError(source, lineno, "state ids must be integers") from None
        if key in transitions and transitions[key][1] != target:
            raise DfaFormatError(source, lineno, f"conflicting transition for {key}")
        transitions[key] = (lineno, target)
    for name in ("alphabet", "states", "initial"):
        if name not in headers:
            raise DfaFormatError(source, last_line, f"missing header {name!r}")
    letters = tuple(headers["alphabet"][1])
    try:
        (count,) = map(int, headers["states"][1])
    except ValueError:
        raise DfaFormatError(source, headers["states"][0], "states takes one integer") from None
    try:
        (initial,) = map(int, headers["initial"][1])
    except ValueError:
        raise DfaFormatError(source, headers["initial"][0], "initial takes one integer") from None
    acc_line, acc_values = headers.get("accepting", (last_line, []))
    try:
        accepting = {int(v) for v in acc_values}
    except ValueError:
        raise DfaFormatError(source, acc_line, "accepting ids must be integers") from None
    rows = [[None] * len(letters) for _ in range(count)]
    col = {c: i for i, c in enumerate(letters)}
    for (q, letter), (lineno, target) in transitions.items():
        if letter not in col:
            raise DfaFormatError(source, lineno, f"letter {letter!r} not in alphabet")
        if not 0 <= q < count or not 0 <= target < count:
            raise DfaFormatError(source, lineno, f"state id outside 0..{count - 1}")
        rows[q][col[letter]] = target
    try:
        partial = PartialDfa(letters, count, initial, rows, accepting)
    except AutomatonError as exc:
        raise DfaFormatError(source, headers["alphabet"][0], str(exc)) from None
    return partial.to_dfa() if partial.is_complete() else partial


def format_dfa(d: Union[Dfa, PartialDfa]) -> str:
    lines = [
        f"alphabet: {' '.join(d.alphabet.letters)}",
        f"states: {d.state_count}",
        f"initial: {d.initial}",
        f"accepting: {' '.join(str(q) for q in sorted(d.accepting))}".rstrip(),
    ]
    for q, row in enumerate(d.delta):
        for letter, t in zip(d.alphabet.letters, row):
            if t is not None:
                lines.append(f"{q} {letter} {t}")
    return "\n".join(lines) + "\n"


def read_dfa(path) -> Union[Dfa, PartialDfa]:
    path = Path(path)
    return parse_dfa(path.read_text(encoding="utf-8"), str(path))


def write_dfa(d, path) -> None:
    Path(path).write_text(format_dfa(d), encoding="utf-8")
