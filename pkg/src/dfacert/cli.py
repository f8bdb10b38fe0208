"""Command-line entry point.

Exit codes: 0 positive or separable, 1 refuted or not separable (a
certificate is produced where one exists), 2 input error, 3 size limit.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .automata import RESET, AutomatonError, Dfa, complete, minimize
from .bench import FAMILIES, records_to_csv, run_bench
from .game import (
    Judge, Transcript, TranscriptError, ViolationTracker, certificate_from_json, certificate_to_json,
    check_witness, find_violation, find_violation_sep, induced_partial_dfa,
)
from .knowledge import ScaleError
from .plotting import plot_records
from .separation import Mode, SeparationInstance, find_separator
from .solver import solve_game
from .strategies import (
    ProtocolError, greedy_residual_prover, honest_prover, online_bound, online_refuter, run_match,
)
from .textio import DfaFormatError, format_dfa, read_dfa

EXIT_OK, EXIT_REFUTED, EXIT_INPUT, EXIT_SCALE = 0, 1, 2, 3


class InputError(Exception):
    pass


def _load(path) -> Dfa:
    try:
        return complete(read_dfa(path))
    except FileNotFoundError:
        raise InputError(f"{path}: no such file") from None


def _emit(text: str, out) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


# -- commands ---------------------------------------------------------------

def cmd_minimize(args) -> int:
    m = minimize(_load(args.path))
    text = f"; index: {m.state_count}\n" + format_dfa(m)
    if args.output:
        Path(args.output).write_text(format_dfa(m), encoding="utf-8")
        print(f"; index: {m.state_count}")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _certify_prover(lang, k, kind, max_nodes):
    if kind == "greedy":
        return greedy_residual_prover(lang, k)
    try:
        return solve_game(lang, k, max_nodes=max_nodes).prover()
    except ScaleError:
        if kind == "solver":
            raise
        return greedy_residual_prover(lang, k)


def cmd_certify(args) -> int:
    lang = _load(args.dfa)
    if args.k < 1:
        raise InputError("--k must be positive")
    m = minimize(lang)
    if args.k >= m.state_count:
        sys.stdout.write(f"; positive: a {m.state_count}-state DFA for the language\n" + format_dfa(m))
        return EXIT_OK
    prover = _certify_prover(lang, args.k, args.prover, args.max_nodes)
    refuter = online_refuter(lang, args.k)
    bound = online_bound(args.k, m.state_count)
    outcome = run_match(prover, refuter, lang, args.k, bound)
    if not outcome.refuter_won:
        raise RuntimeError("online refuter did not win within its bound")
    _emit(_dump(certificate_to_json(outcome.transcript, outcome.witness)), args.out)
    print(f"refuted: {outcome.witness.clause} violation after {outcome.rounds} rounds "
          f"(bound {bound}) against the {prover.name} prover", file=sys.stderr)
    return EXIT_REFUTED


def cmd_verify_cert(args) -> int:
    try:
        obj = json.loads(Path(args.cert).read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise InputError(f"{args.cert}: no such file") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{args.cert}: invalid JSON: {exc}") from None
    t, w = certificate_from_json(obj)
    lang = _load(args.lang)
    lang2 = _load(args.lang2) if args.lang2 else None
    problem = check_witness(t, w, lang, lang2)
    found = find_violation(t, lang) if lang2 is None else find_violation_sep(t, lang, lang2)
    if problem is None and found is not None:
        print(f"accept: {w.clause} violation confirmed")
        return EXIT_OK
    print(f"reject: {problem or 'transcript contains no violation'}")
    return EXIT_REFUTED


def cmd_separate(args) -> int:
    a1, a2 = _load(args.a1), _load(args.a2)
    mode = Mode(args.mode)
    inst = SeparationInstance(a1, a2, args.k, mode)
    result = find_separator(inst, max_structures=args.max_structures)
    if result.separable:
        sys.stdout.write(_dump({"separable": True, "mode": mode.value,
                                "separator": format_dfa(result.separator)}))
        return EXIT_OK
    report = {"separable": False, "mode": mode.value, "reason": result.reason}
    if result.reason == "exhausted" and mode is Mode.PLAIN:
        refuter = result.refuter(lazy=args.lazy)
        prover = greedy_residual_prover(a1, args.k)
        outcome = run_match(prover, refuter, a1, args.k, refuter.bound, a2)
        if outcome.refuter_won:
            report["refuter"] = "expose"
            report["certificate"] = certificate_to_json(outcome.transcript, outcome.witness)
    text = _dump(report)
    if args.certificate and "certificate" in report:
        Path(args.certificate).write_text(_dump(report["certificate"]), encoding="utf-8")
    sys.stdout.write(text)
    return EXIT_REFUTED


def cmd_bench(args) -> int:
    records = run_bench(args.family, args.n_max, args.n_limit)
    text = records_to_csv(records)
    figure = args.figure
    if args.csv:
        Path(args.csv).write_text(text, encoding="utf-8")
        if figure is None:
            figure = str(Path(args.csv).with_suffix(".png"))
    else:
        sys.stdout.write(text)
    if figure:
        plot_records(records, figure, title=f"{args.family} family")
        print(f"figure written to {figure}", file=sys.stderr)
    return EXIT_OK


# -- interactive play -------------------------------------------------------

def _transcript(tracker, k, alphabet) -> Transcript:
    return Transcript(k, alphabet, tracker.y1, tuple(zip(tracker.xs, tracker.ys[1:])))


def _show_state(tracker, k, alphabet, out) -> None:
    t = _transcript(tracker, k, alphabet)
    j = len(tracker.xs) + 1
    seg = tracker._segment(j)
    print(f"  segment w^{j} = {' '.join(seg) or 'ε'} mapped to {tracker.ys[-1]}", file=out)
    if tracker.violation is None:
        moves = induced_partial_dfa(t).delta
        shown = ", ".join(f"δ({q},{a})={r}" for (q, a), r in sorted(moves.items()))
        print(f"  fixed moves: {shown or 'none'}", file=out)


def cmd_play(args, stdin=None, out=None) -> int:
    stdin = stdin or sys.stdin
    out = out or sys.stdout
    lang = _load(args.lang)
    k = args.k
    judge = Judge.recognition(lang)
    alphabet = lang.alphabet

    def ask(prompt, parse):
        while True:
            print(prompt, end="", file=out, flush=True)
            line = stdin.readline()
            if not line:
                return None
            try:
                return parse(line.strip())
            except ValueError as exc:
                print(f"  invalid input: {exc}", file=out)

    def parse_state(s):
        y = int(s)
        if not 1 <= y <= k:
            raise ValueError(f"state must be in 1..{k}")
        return y

    def parse_letter(s):
        if s == "stop":
            return s
        if s != RESET and s not in alphabet:
            raise ValueError(f"letter must be one of {' '.join(alphabet.letters)} {RESET} or 'stop'")
        return s

    if args.role == "prover":
        if k >= minimize(lang).state_count:
            print("k reaches the index; no refuter exists, nothing to play", file=out)
            return EXIT_OK
        refuter = online_refuter(lang, k)
        y1 = ask("your initial state: ", parse_state)
        if y1 is None:
            return EXIT_INPUT
        tracker = ViolationTracker(judge, k, y1)
        refuter.start(y1)
        while tracker.violation is None and len(tracker.xs) < args.max_rounds:
            x = refuter.next_letter()
            if x is None:
                break
            print(f"refuter plays {x}", file=out)
            y = ask("your state: ", parse_state)
            if y is None:
                return EXIT_INPUT
            tracker.push(x, y)
            refuter.observe(y)
            _show_state(tracker, k, alphabet, out)
    else:
        view_index = minimize(lang).state_count
        prover = (honest_prover(minimize(lang), k) if k >= view_index
                  else greedy_residual_prover(lang, k))
        y1 = prover.start()
        print(f"prover starts in {y1}", file=out)
        tracker = ViolationTracker(judge, k, y1)
        while tracker.violation is None and len(tracker.xs) < args.max_rounds:
            x = ask("your letter: ", parse_letter)
            if x is None or x == "stop":
                break
            y = prover.respond(x)
            print(f"prover answers {y}", file=out)
            tracker.push(x, y)
            _show_state(tracker, k, alphabet, out)
    t = _transcript(tracker, k, alphabet)
    if tracker.violation is not None:
        w = tracker.violation
        print(f"violation: {w.clause} at positions {w.j1}"
              + (f" and {w.j2}" if w.j2 is not None else ""), file=out)
        if args.save:
            Path(args.save).write_text(_dump(certificate_to_json(t, w)), encoding="utf-8")
            print(f"certificate saved to {args.save}", file=out)
        return EXIT_REFUTED
    print(f"session ended after {len(tracker.xs)} rounds without a violation", file=out)
    return EXIT_OK


# -- wiring -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dfacert", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("minimize", help="write the canonical minimal DFA and its index")
    p.add_argument("path")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_minimize)

    p = sub.add_parser("certify", help="prove or refute recognizability by a k-DFA")
    p.add_argument("--dfa", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--out", help="certificate file (default: stdout)")
    p.add_argument("--prover", choices=("auto", "solver", "greedy"), default="auto")
    p.add_argument("--max-nodes", type=int, default=200_000)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("verify-cert", help="check a violation certificate")
    p.add_argument("--cert", required=True)
    p.add_argument("--lang", required=True)
    p.add_argument("--lang2")
    p.set_defaults(func=cmd_verify_cert)

    p = sub.add_parser("separate", help="search for a k-DFA separator")
    p.add_argument("--a1", required=True)
    p.add_argument("--a2", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--mode", choices=[m.value for m in Mode], default="plain")
    p.add_argument("--certificate", help="also write the refutation certificate here")
    p.add_argument("--lazy", action="store_true", help="start the clash phase early")
    p.add_argument("--max-structures", type=int, default=2_000_000)
    p.set_defaults(func=cmd_separate)

    p = sub.add_parser("play", help="play the game interactively")
    p.add_argument("--lang", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--role", choices=("prover", "refuter"), required=True)
    p.add_argument("--max-rounds", type=int, default=500)
    p.add_argument("--save", help="certificate file written when a violation occurs")
    p.set_defaults(func=cmd_play)

    p = sub.add_parser("bench", help="certificate lengths on parametric families")
    p.add_argument("--family", choices=FAMILIES, required=True)
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--n-limit", type=int, default=8)
    p.add_argument("--csv", help="CSV output file (default: stdout)")
    p.add_argument("--figure", help="PNG figure (default: next to --csv)")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ScaleError as exc:
        print(f"error: too large: {exc}", file=sys.stderr)
        return EXIT_SCALE
    except (InputError, DfaFormatError, TranscriptError, AutomatonError, ProtocolError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
