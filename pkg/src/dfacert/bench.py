"""Certificate lengths on the parametric families, next to their bounds.

Rows for the construction-backed refuters (``offline``, ``online``,
``expose``) and the survival provers carry ``length <= bound``.  The
``*-necessity`` rows put the lower-bound budget in ``length`` and the
matching construction's length in ``bound``, so they read the same way.
"""

from __future__ import annotations

import csv
import io
from dataclasses import astuple, dataclass, fields

from .automata import complement
from .families import ln_minimal, merge_states, survival_a, survival_b
from .knowledge import ScaleError
from .separation import expose_refuter
from .solver import best_response_prover
from .strategies import (
    build_universal_bad_prefix, greedy_residual_prover, honest_prover, min_rounds_to_refute,
    offline_bound, online_bound, online_refuter, run_match,
)

FAMILIES = ("ln", "survival")
HEADER = ("family", "n", "N", "k", "refuter", "length", "bound")


@dataclass(frozen=True)
class BenchRecord:
    family: str
    n: int
    N: int
    k: int
    refuter: str
    length: int
    bound: int


def merged_provers(lang, k):
    """Honest provers on every one-pair merge of the minimal automaton."""
    n = lang.state_count
    return [honest_prover(merge_states(lang, keep, drop), k)
            for keep in range(n) for drop in range(n) if keep != drop]


def online_corpus(lang, k, best_response_limit: int = 200_000):
    provers = [greedy_residual_prover(lang, k)] + merged_provers(lang, k)
    try:
        provers.append(best_response_prover(online_refuter(lang, k), lang, k,
                                            max_nodes=best_response_limit))
    except ScaleError:
        pass
    return provers


def ln_records(n: int) -> list:
    lang = ln_minimal(n)
    big_n = lang.state_count
    k = big_n - 1
    offline = len(build_universal_bad_prefix(lang, k))
    online = 0
    for prover in online_corpus(lang, k):
        outcome = run_match(prover, online_refuter(lang, k), lang, k, 10 * online_bound(k, big_n))
        if not outcome.refuter_won:
            raise RuntimeError(f"online refuter failed against {prover.name} on L_{n}")
        online = max(online, outcome.rounds)
    refuter = expose_refuter(lang, complement(lang), k, check=False)
    sep = run_match(greedy_residual_prover(lang, k), refuter, lang, k, 10 * refuter.bound, complement(lang))
    if not sep.refuter_won:
        raise RuntimeError(f"expose refuter failed on L_{n}")
    return [
        BenchRecord("ln", n, big_n, k, "offline", offline, offline_bound(k, big_n)),
        BenchRecord("ln", n, big_n, k, "offline-necessity", (n + 2) * n * (n - 1) // 2, offline),
        BenchRecord("ln", n, big_n, k, "online", online, online_bound(k, big_n)),
        BenchRecord("ln", n, big_n, k, "online-necessity", n * (n + 1), online),
        BenchRecord("ln", n, big_n, k, "expose", sep.rounds, refuter.bound),
    ]


def survival_records(n: int) -> list:
    a, b = survival_a(n), survival_b(n)
    k = n + 2
    greedy = min_rounds_to_refute(greedy_residual_prover(a, k), a, k)
    follower = min_rounds_to_refute(honest_prover(b, k), a, k)
    return [
        BenchRecord("survival", n, a.state_count, k, "survival-A", greedy, n + 4),
        BenchRecord("survival", n, a.state_count, k, "survival-B", follower, 2 * n),
    ]


def run_bench(family: str, n_max: int, n_limit: int = 8) -> list:
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}; choose from {FAMILIES}")
    if n_max > n_limit:
        raise ScaleError(f"n-max {n_max} exceeds the limit {n_limit}")
    start = 1 if family == "ln" else 2
    make = ln_records if family == "ln" else survival_records
    records = []
    for n in range(start, n_max + 1):
        records.extend(make(n))
    return records


def records_to_csv(records) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(HEADER)
    for r in records:
        writer.writerow(astuple(r))
    return out.getvalue()


def records_from_csv(text: str) -> list:
    reader = csv.DictReader(io.StringIO(text))
    ints = {f.name for f in fields(BenchRecord) if f.type in ("int", int)}
    return [BenchRecord(**{k: int(v) if k in ints else v for k, v in row.items()}) for row in reader]
