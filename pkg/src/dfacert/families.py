"""Parametric language families used by the benchmarks and tests."""

from __future__ import annotations

from .automata import Dfa, finite_language_dfa, minimize, AutomatonError


def ln_alphabet(n: int) -> tuple:
    return ("a",) + tuple(f"b{i}" for i in range(1, n + 1))


def ln_words(n: int) -> list:
    """The finite language ``{a^n b_i b_i : 1 <= i <= n}``."""
    return [("a",) * n + (f"b{i}", f"b{i}") for i in range(1, n + 1)]


def ln_dfa(n: int) -> Dfa:
    """Prefix-tree automaton for L_n (not minimal: one accepting leaf per i)."""
    if n < 1:
        raise ValueError("n must be positive")
    return finite_language_dfa(ln_words(n), ln_alphabet(n))


def ln_minimal(n: int) -> Dfa:
    return minimize(ln_dfa(n))


def ln_r_state(d: Dfa, n: int, i: int) -> int:
    """State of ``d`` reached by ``a^n b_i``."""
    return d.run(("a",) * n + (f"b{i}",))


def survival_alphabet():
    return ("a", "b")


def survival_a(n: int) -> Dfa:
    """Minimal DFA for ``{w : w_1 = b or |w| = n}`` (n + 3 states)."""
    if n < 1:
        raise ValueError("n must be positive")
    # 0..n: a-chain by length (0 is the initial state), n+1: too long, n+2: b-sink.
    too_long, b_sink = n + 1, n + 2
    rows = []
    for q in range(n + 1):
        a_next = q + 1 if q < n else too_long
        b_next = b_sink if q == 0 else (q + 1 if q < n else too_long)
        rows.append((a_next, b_next))
    rows.append((too_long, too_long))
    rows.append((b_sink, b_sink))
    return minimize(Dfa(survival_alphabet(), n + 3, 0, rows, {n, b_sink}))


def survival_b(n: int) -> Dfa:
    """Minimal DFA for ``{w : w_1 = b or (w_1 = a and |w| = 0 mod n)}``."""
    if n < 1:
        raise ValueError("n must be positive")
    # 0: initial, 1..n: length mod n after a leading a (state n == length 0 mod n),
    # n+1: b-sink.
    b_sink = n + 1
    rows = [(1, b_sink)]
    for q in range(1, n + 1):
        nxt = q + 1 if q < n else 1
        rows.append((nxt, nxt))
    rows.append((b_sink, b_sink))
    return minimize(Dfa(survival_alphabet(), n + 2, 0, rows, {n, b_sink}))


def parity_dfa(letter: str, alphabet=("a", "b"), even=True) -> Dfa:
    """Words with an even (or odd) number of ``letter``."""
    rows = []
    for q in (0, 1):
        rows.append([1 - q if c == letter else q for c in alphabet])
    return Dfa(alphabet, 2, 0, rows, {0} if even else {1})


def contains_letter_dfa(letter: str, alphabet=("a", "b")) -> Dfa:
    rows = [[1 if c == letter else 0 for c in alphabet], [1] * len(alphabet)]
    return Dfa(alphabet, 2, 0, rows, {1})


def merge_states(d: Dfa, keep: int, drop: int) -> Dfa:
    """Quotient of ``d`` identifying ``drop`` with ``keep``.

    Where the two successors differ, a move into a rejecting sink yields to the
    other move; otherwise ``keep``'s move wins.  The result has one state fewer.
    """
    if keep == drop:
        raise AutomatonError("cannot merge a state with itself")
    sinks = {
        q for q in range(d.state_count)
        if q not in d.accepting and all(t == q for t in d.delta[q])
    }
    survivors = [q for q in range(d.state_count) if q != drop]
    ids = {q: i for i, q in enumerate(survivors)}
    ids[drop] = ids[keep]
    rows = []
    for q in survivors:
        row = []
        for c, t in enumerate(d.delta[q]):
            if q == keep:
                other = d.delta[drop][c]
                if t in sinks and other not in sinks:
                    t = other
            row.append(ids[t])
        rows.append(row)
    acc = {ids[q] for q in d.accepting if q != drop}
    initial = ids[d.initial]
    return Dfa(d.alphabet, len(survivors), initial, rows, acc)
