"""Command-line front end: reset words, profiles, verification and scans.

Exit codes: 0 success, 1 usage or parse error, 2 domain negative (automaton
is not synchronizing, or a verification check failed), 3 capacity exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import enumeration, series, sync
from .automaton import (BUILTIN_NAMES, Dfa, builtin_automaton, dfa_from_json,
                        parse_dfa, serialize_dfa, word_from_str, word_to_str)
from .errors import CapacityError, DfaError, DfaParseError
from .word_matrix import matrix_of_word, render

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NEGATIVE = 2
EXIT_CAPACITY = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def load_input(spec: str) -> Dfa:
    """Resolve a built-in name (cerny:<n>, kari, roman) or a file path."""
    try:
        return builtin_automaton(spec)
    except DfaError:
        pass
    path = Path(spec)
    if not path.exists():
        raise DfaParseError(
            f"{spec!r} is neither a built-in ({', '.join(BUILTIN_NAMES)}) "
            f"nor an existing file")
    text = path.read_text()
    if path.suffix == ".json" or text.lstrip().startswith("{"):
        return dfa_from_json(text)
    return parse_dfa(text)


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _profile_lines(dfa: Dfa, profile, as_csv: bool) -> str:
    lines = ["suffix_length,value"]
    lines += [f"{length},{value}" for length, value in profile]
    if not as_csv:
        lines.append("")
        lines.append("bound,count")
        for bound in range(1, dfa.n):
            lines.append(f"{bound},{series.threshold_count(profile, bound)}")
    return "\n".join(lines) + "\n"


def cmd_reset_word(args) -> int:
    dfa = load_input(args.input)
    result = sync.shortest_reset_word(dfa)
    if result is None:
        if args.json:
            _emit(json.dumps({"input": args.input, "n": dfa.n, "k": dfa.k,
                              "synchronizing": False}, sort_keys=True) + "\n",
                  args.out)
        else:
            _emit(f"automaton: {args.input} (n={dfa.n}, k={dfa.k})\n"
                  "synchronizing: no\n", args.out)
        print("not synchronizing", file=sys.stderr)
        return EXIT_NEGATIVE

    payload = {
        "input": args.input,
        "n": dfa.n,
        "k": dfa.k,
        "synchronizing": True,
        "length": result.length,
        "word": word_to_str(result.word),
        "target": result.target,
        "states_expanded": result.states_expanded,
    }
    ctx = series.SeriesContext.for_state(dfa, result.target)
    if args.profile:
        payload["profile"] = [[length, value] for length, value
                              in series.suffix_profile(ctx, result.word)]
    if args.show_matrix:
        payload["matrix"] = [list(row) for row
                             in _dense(matrix_of_word(dfa, result.word))]
    if args.check_lemmas:
        checks = [
            ("irreducible", sync.is_irreducible(dfa, result.word, result.target)),
            ("suffix-distinct",
             sync.suffix_distinctness_check(dfa, result.word, result.target)),
        ]
        try:
            near = sync.near_sync_suffixes(dfa, result.word, result.target)
            checks.append(("near-sync-suffixes", len(near) <= dfa.n))
        except AssertionError:
            checks.append(("near-sync-suffixes", False))
        dims_ok = True
        for i in range(1, dfa.n):
            try:
                series.suffix_space_dimension(ctx, result.word, i)
            except AssertionError:
                dims_ok = False
        checks.append(("suffix-space-bound", dims_ok))
        # collapse implication over every split s = t.v of the found word
        s, q = result.word, result.target
        probes = [(), (0,), (1,)] if dfa.k >= 2 else [(), (0,)]
        collapse_ok = all(
            sync.reset_collapse_check(dfa, s[:i], u, s[i:], q)
            for i in range(len(s) + 1) for u in probes + [s[i:]])
        checks.append(("reset-collapse", collapse_ok))
        payload["checks"] = [{"name": name, "passed": passed}
                             for name, passed in checks]

    if args.json:
        _emit(json.dumps(payload, sort_keys=True, indent=2) + "\n", args.out)
        return EXIT_OK

    lines = [f"automaton: {args.input} (n={dfa.n}, k={dfa.k})",
             "synchronizing: yes",
             f"shortest reset word: {word_to_str(result.word, group=5)} "
             f"(length {result.length})",
             f"target state: {result.target}",
             f"subsets expanded: {result.states_expanded}"]
    if args.show_matrix:
        lines.append("matrix:")
        lines.append(render(matrix_of_word(dfa, result.word)))
    if args.check_lemmas:
        for entry in payload["checks"]:
            lines.append(f"[{'PASS' if entry['passed'] else 'FAIL'}] {entry['name']}")
    out = "\n".join(lines) + "\n"
    if args.profile:
        out += _profile_lines(dfa, series.suffix_profile(ctx, result.word), False)
    _emit(out, args.out)
    return EXIT_OK


def _dense(M):
    return [[1 if M.rows[i] == j else 0 for j in range(M.n)] for i in range(M.n)]


def cmd_profile(args) -> int:
    dfa = load_input(args.input)
    if args.word is not None:
        word = word_from_str(args.word, dfa.k)
    else:
        result = sync.shortest_reset_word(dfa)
        if result is None:
            print("not synchronizing and no --word given", file=sys.stderr)
            return EXIT_NEGATIVE
        word = result.word
    if args.q is not None:
        if not 0 <= args.q < dfa.n:
            raise UsageError(f"--q {args.q} out of range [0, {dfa.n})")
        q = args.q
    else:
        from .automaton import image
        img = image(dfa, dfa.full_set, word)
        if img & (img - 1):
            raise UsageError("word is not synchronizing; give --q explicitly")
        q = img.bit_length() - 1
    ctx = series.SeriesContext.for_state(dfa, q)
    profile = series.suffix_profile(ctx, word)
    if args.json:
        payload = {"input": args.input, "word": word_to_str(word), "q": q,
                   "profile": [[length, value] for length, value in profile],
                   "threshold_counts": {str(b): series.threshold_count(profile, b)
                                        for b in range(1, dfa.n)}}
        _emit(json.dumps(payload, sort_keys=True, indent=2) + "\n", args.out)
    else:
        _emit(_profile_lines(dfa, profile, args.csv), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    dfa = load_input(args.input)
    expect = enumeration.EXAMPLE_EXPECTATIONS.get(args.input)
    results = enumeration.verify_automaton(dfa, args.input, expect)
    all_passed = all(r.passed for r in results)
    if args.json:
        payload = {"input": args.input, "passed": all_passed,
                   "checks": [r.to_dict() for r in results]}
        _emit(json.dumps(payload, sort_keys=True, indent=2) + "\n", args.out)
    else:
        lines = [f"[{'PASS' if r.passed else 'FAIL'}] {r.name}"
                 + (f": {r.detail}" if r.detail and not r.passed else "")
                 for r in results]
        lines.append(f"summary: {sum(r.passed for r in results)}/{len(results)} passed")
        _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK if all_passed else EXIT_NEGATIVE


def cmd_scan(args) -> int:
    cfg = enumeration.ScanConfig(
        n=args.n, k=args.k,
        require_strongly_connected=args.strongly_connected,
        worker_count=args.workers,
        canonicalize=args.canonical)
    report = enumeration.extremal_scan(cfg)
    if args.out:
        Path(args.out).write_text(report.to_json())
    if args.json:
        sys.stdout.write(report.to_json())
    else:
        lines = [f"scanned: {report.total} tables (n={report.n}, k={report.k})",
                 f"synchronizing: {report.synchronizing}",
                 f"max shortest reset length: {report.max_length} "
                 f"(attained by {report.max_length_count} tables, "
                 f"{len(report.witnesses)} up to relabeling)",
                 "histogram:"]
        for length, count in sorted(report.histogram.items()):
            lines.append(f"  {length}: {count}")
        lines.append(f"upper-bound violations: {len(report.upper_bound_violations)}")
        lines.append("conjecture counterexamples: "
                     f"{len(report.conjecture_counterexamples)}")
        sys.stdout.write("\n".join(lines) + "\n")
    return EXIT_OK


def cmd_examples(args) -> int:
    names = [args.name] if args.name else ["cerny:4", "kari", "roman"]
    chunks = []
    for name in names:
        dfa = builtin_automaton(name)
        chunks.append(f"# {name}\n" + serialize_dfa(dfa))
    _emit("\n".join(chunks), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="syncword",
                     description="Analyze synchronization of complete DFAs "
                                 "with exact arithmetic.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("reset-word", help="shortest reset word of an automaton")
    p.add_argument("input", help="built-in name (cerny:<n>, kari, roman) or file")
    p.add_argument("--show-matrix", action="store_true")
    p.add_argument("--profile", action="store_true",
                   help="append the suffix profile of the word")
    p.add_argument("--check-lemmas", action="store_true",
                   help="run the structural checks on the found word")
    p.add_argument("--json", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_reset_word)

    p = sub.add_parser("profile", help="suffix profile of a word")
    p.add_argument("input")
    p.add_argument("--word", help="letters, e.g. 'baaab'; default: shortest reset word")
    p.add_argument("--q", type=int, help="target state; default: the word's target")
    p.add_argument("--csv", action="store_true", help="profile CSV only")
    p.add_argument("--json", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_profile)

    p = sub.add_parser("verify", help="run the lemma battery on an automaton")
    p.add_argument("input")
    p.add_argument("--json", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("scan", help="exhaustive scan over all small tables")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--strongly-connected", action="store_true")
    p.add_argument("--canonical", action="store_true",
                   help="one representative per relabeling class")
    p.add_argument("--json", action="store_true")
    p.add_argument("--out", help="write the JSON report to a file")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("examples", help="dump built-in automata in text format")
    p.add_argument("name", nargs="?", help="one of cerny:<n>, kari, roman")
    p.add_argument("--out")
    p.set_defaults(func=cmd_examples)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except DfaParseError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except DfaError as e:
        print(f"input error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except CapacityError as e:
        print(f"capacity error: {e}", file=sys.stderr)
        return EXIT_CAPACITY


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
