"""Exhaustive scans over small complete DFAs and the assertion battery.

Transition tables are flattened letter-major (flat[c*n + p] = delta(p, c))
and identified with base-n numerals, so the whole space [0, n^(nk)) can be
chunked deterministically across workers; partial results merge in chunk
order, making reports byte-identical for any worker count.
"""

from __future__ import annotations

import json
import random
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations, product
from typing import Iterator, Sequence

from . import linspace, series, sync
from .automaton import (Dfa, Word, cerny_automaton, cerny_word, image,
                        kari_automaton, KARI_WORD, roman_automaton,
                        ROMAN_WORD, word_to_str)
from .errors import CapacityError, DfaError
from .word_matrix import (identity, matrix_of_word, matrices_of_letters,
                          multiply, nonzero_columns, rank)

ENUMERATION_GUARD = 10 ** 9
CANONICAL_MAX_N = 5


@dataclass(frozen=True)
class ScanConfig:
    """Parameters of an exhaustive scan over all n-state, k-letter tables."""

    n: int
    k: int
    require_strongly_connected: bool = False
    worker_count: int = 1
    canonicalize: bool = False

    def __post_init__(self):
        if self.n < 1 or self.k < 1:
            raise DfaError("n and k must be positive")
        if self.worker_count < 1:
            raise DfaError("worker_count must be positive")

    @property
    def table_count(self) -> int:
        return self.n ** (self.n * self.k)

    def check_guard(self):
        if self.table_count > ENUMERATION_GUARD:
            raise CapacityError(
                f"{self.n}^{self.n * self.k} = {self.table_count} tables exceed "
                f"the enumeration guard {ENUMERATION_GUARD}")
        if self.canonicalize and self.n > CANONICAL_MAX_N:
            raise CapacityError(
                f"canonicalization is O(n!) per table; capped at n <= {CANONICAL_MAX_N}")


def index_to_flat(idx: int, n: int, k: int) -> list[int]:
    """Digits of idx base n, most significant first; length nk."""
    flat = [0] * (n * k)
    for pos in range(n * k - 1, -1, -1):
        flat[pos] = idx % n
        idx //= n
    return flat


def flat_to_dfa(flat: Sequence[int], n: int, k: int) -> Dfa:
    return Dfa(n, k, tuple(tuple(flat[c * n:(c + 1) * n]) for c in range(k)))


def dfa_to_flat(dfa: Dfa) -> tuple[int, ...]:
    return tuple(t for row in dfa.delta for t in row)


def relabel_flat(flat: Sequence[int], n: int, k: int,
                 perm: Sequence[int]) -> tuple[int, ...]:
    """Apply a state relabeling (perm[old] = new) to a flat table."""
    out = [0] * (n * k)
    for c in range(k):
        base = c * n
        for p in range(n):
            out[base + perm[p]] = perm[flat[base + p]]
    return tuple(out)


def canonical_flat(flat: Sequence[int], n: int, k: int) -> tuple[int, ...]:
    """Lexicographically least table over all state relabelings."""
    return min(relabel_flat(flat, n, k, perm) for perm in permutations(range(n)))


def _flat_strongly_connected(flat: Sequence[int], n: int, k: int) -> bool:
    succ = [set() for _ in range(n)]
    pred = [set() for _ in range(n)]
    for c in range(k):
        for p in range(n):
            t = flat[c * n + p]
            succ[p].add(t)
            pred[t].add(p)
    for adj in (succ, pred):
        seen = 1
        stack = [0]
        while stack:
            p = stack.pop()
            for t in adj[p]:
                if not seen >> t & 1:
                    seen |= 1 << t
                    stack.append(t)
        if seen != (1 << n) - 1:
            return False
    return True


def enumerate_dfas(cfg: ScanConfig) -> Iterator[Dfa]:
    """Yield every transition table, in index order, honoring the filters.

    With canonicalize, only tables equal to their canonical form are
    yielded: exactly one representative (the least) per relabeling class.
    """
    cfg.check_guard()
    n, k = cfg.n, cfg.k
    for idx in range(cfg.table_count):
        flat = index_to_flat(idx, n, k)
        if cfg.require_strongly_connected and not _flat_strongly_connected(flat, n, k):
            continue
        if cfg.canonicalize and tuple(flat) != canonical_flat(flat, n, k):
            continue
        yield flat_to_dfa(flat, n, k)


def _flat_shortest_reset_length(flat: Sequence[int], n: int, k: int,
                                subset_images: list[list[int]]) -> int | None:
    """Minimal reset length via subset BFS with per-letter image tables.

    subset_images is scratch storage of k rows, each 2^n long, rebuilt here.
    """
    full = (1 << n) - 1
    for c in range(k):
        t = subset_images[c]
        base = c * n
        for p in range(n):
            t[1 << p] = 1 << flat[base + p]
        for s in range(3, full + 1):
            low = s & (-s)
            if s != low:
                t[s] = t[low] | t[s & (s - 1)]
    dist = [-1] * (full + 1)
    dist[full] = 0
    if full & (full - 1) == 0:
        return 0
    queue = deque([full])
    while queue:
        s = queue.popleft()
        d = dist[s] + 1
        for c in range(k):
            t = subset_images[c][s]
            if dist[t] < 0:
                if t & (t - 1) == 0:
                    return d
                dist[t] = d
                queue.append(t)
    return None


@dataclass
class ScanReport:
    """Aggregate of one enumeration run; serializes to stable JSON."""

    n: int
    k: int
    require_strongly_connected: bool
    canonicalize: bool
    total: int = 0
    synchronizing: int = 0
    histogram: dict[int, int] = field(default_factory=dict)
    max_length: int = 0
    max_length_count: int = 0
    witnesses: list[tuple[int, ...]] = field(default_factory=list)
    upper_bound_violations: list[tuple[int, ...]] = field(default_factory=list)
    conjecture_counterexamples: list[tuple[int, ...]] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "require_strongly_connected": self.require_strongly_connected,
            "canonicalize": self.canonicalize,
            "total": self.total,
            "synchronizing": self.synchronizing,
            "histogram": {str(length): count
                          for length, count in sorted(self.histogram.items())},
            "max_length": self.max_length,
            "max_length_count": self.max_length_count,
            "witnesses": [list(w) for w in self.witnesses],
            "upper_bound_violations": [list(w) for w in self.upper_bound_violations],
            "conjecture_counterexamples": [list(w)
                                           for w in self.conjecture_counterexamples],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"


def _scan_chunk(args) -> dict:
    """Worker: scan table indices [start, end); top-level for multiprocessing."""
    n, k, require_sc, canonical, start, end = args
    cube = (n ** 3 - n) // 6
    cerny_bound = (n - 1) ** 2
    hist: dict[int, int] = {}
    total = 0
    max_len = 0
    max_count = 0
    max_witnesses: set[tuple[int, ...]] = set()
    too_long: list[tuple[int, ...]] = []
    beyond_conjecture: list[tuple[int, ...]] = []
    subset_images = [[0] * (1 << n) for _ in range(k)]
    flat = index_to_flat(start, n, k)
    idx = start
    while idx < end:
        if require_sc and not _flat_strongly_connected(flat, n, k):
            pass
        elif canonical and tuple(flat) != canonical_flat(flat, n, k):
            pass
        else:
            total += 1
            length = _flat_shortest_reset_length(flat, n, k, subset_images)
            if length is not None:
                hist[length] = hist.get(length, 0) + 1
                if length > max_len:
                    max_len = length
                    max_count = 1
                    max_witnesses = {canonical_flat(flat, n, k)}
                elif length == max_len:
                    max_count += 1
                    max_witnesses.add(canonical_flat(flat, n, k))
                if length > cube:
                    too_long.append(tuple(flat))
                if length > cerny_bound:
                    beyond_conjecture.append(tuple(flat))
        idx += 1
        # increment the base-n numeral in place
        pos = n * k - 1
        while pos >= 0:
            flat[pos] += 1
            if flat[pos] < n:
                break
            flat[pos] = 0
            pos -= 1
    return {
        "total": total,
        "histogram": hist,
        "max_length": max_len,
        "max_length_count": max_count,
        "witnesses": max_witnesses,
        "upper_bound_violations": too_long,
        "conjecture_counterexamples": beyond_conjecture,
    }


def extremal_scan(cfg: ScanConfig) -> ScanReport:
    """Scan every table, collect the reset-length histogram and extremes.

    Deterministic for a given (n, k, filters) regardless of worker_count:
    chunks are merged in index order and witnesses are reported as a sorted
    set of canonical tables.
    """
    cfg.check_guard()
    n, k = cfg.n, cfg.k
    count = cfg.table_count
    workers = min(cfg.worker_count, count) or 1
    bounds = [count * i // workers for i in range(workers + 1)]
    tasks = [(n, k, cfg.require_strongly_connected, cfg.canonicalize,
              bounds[i], bounds[i + 1]) for i in range(workers)]
    if workers == 1:
        partials = [_scan_chunk(tasks[0])]
    else:
        import multiprocessing
        ctx = multiprocessing.get_context("fork")
        with ctx.Pool(workers) as pool:
            partials = pool.map(_scan_chunk, tasks)

    report = ScanReport(n=n, k=k,
                        require_strongly_connected=cfg.require_strongly_connected,
                        canonicalize=cfg.canonicalize)
    report.max_length = max((p["max_length"] for p in partials), default=0)
    witnesses: set[tuple[int, ...]] = set()
    for p in partials:
        report.total += p["total"]
        for length, c in p["histogram"].items():
            report.histogram[length] = report.histogram.get(length, 0) + c
        if p["max_length"] == report.max_length:
            report.max_length_count += p["max_length_count"]
            witnesses |= p["witnesses"]
        report.upper_bound_violations.extend(p["upper_bound_violations"])
        report.conjecture_counterexamples.extend(p["conjecture_counterexamples"])
    report.synchronizing = sum(report.histogram.values())
    report.witnesses = sorted(witnesses)
    return report


# ---------------------------------------------------------------------------
# suffix independence

def independent_suffix_length(dfa: Dfa, s: Sequence[int]) -> int:
    """Length of the largest suffix whose suffix-matrix set is independent.

    Suffix matrices are added by increasing length, the empty suffix (the
    identity) included; independence, once broken, never returns, so the
    first dependent length stops the growth.
    """
    s = dfa.check_word(s)
    ech = linspace.RowEchelon(dfa.n * dfa.n)
    best = -1
    for length in range(len(s) + 1):
        if not ech.add(linspace.flatten(matrix_of_word(dfa, s[len(s) - length:]))):
            break
        best = length
    return best


def suffix_closed_dimension_check(dfa: Dfa, s: Sequence[int]) -> bool:
    """Dimension equals the member count on the largest independent suffix set.

    For the largest suffix u of s whose matrices {M_t : t a suffix of u}
    are independent, the span dimension must equal the number of those
    matrices, |u|+1 counting the empty suffix.
    """
    s = dfa.check_word(s)
    length = independent_suffix_length(dfa, s)
    vecs = [linspace.flatten(matrix_of_word(dfa, s[len(s) - l:]))
            for l in range(length + 1)]
    return linspace.span_dimension(vecs) == length + 1


# ---------------------------------------------------------------------------
# the assertion battery

@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""

    def to_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


def _word_pool(dfa: Dfa, seed: int = 20240) -> list[Word]:
    """Deterministic sample: all words up to length 3 plus seeded longer ones."""
    pool: list[Word] = []
    for length in range(4):
        pool.extend(product(range(dfa.k), repeat=length))
    rng = random.Random(seed + dfa.n * 31 + dfa.k)
    for _ in range(30):
        length = rng.randint(4, 2 * dfa.n)
        pool.append(tuple(rng.randrange(dfa.k) for _ in range(length)))
    return pool


def verify_automaton(dfa: Dfa, name: str = "dfa",
                     expect: dict | None = None) -> list[CheckResult]:
    """Run the whole lemma battery against one automaton.

    Failures are data, not errors: each check lands in the result list with
    a counterexample description.  `expect` may pin reset_length and
    threshold_counts {bound: count} for the known automata.
    """
    expect = expect or {}
    results: list[CheckResult] = []
    pool = _word_pool(dfa)
    n = dfa.n

    def check(check_name: str, passed: bool, detail: str = ""):
        results.append(CheckResult(f"{check_name}", bool(passed), detail))

    # reset word and basic facts
    best = sync.shortest_reset_word(dfa)
    check("synchronizing", best is not None,
          "" if best else "no reset word exists")
    if best is None:
        return results
    s_min, q = best.word, best.target
    ctx = series.SeriesContext.for_state(dfa, q)
    check("reset-word-valid", image(dfa, dfa.full_set, s_min) == 1 << q,
          word_to_str(s_min))
    if "reset_length" in expect:
        check("reset-length", best.length == expect["reset_length"],
              f"got {best.length}, expected {expect['reset_length']}")
    cube = (n ** 3 - n) // 6
    check("upper-bound", best.length <= cube,
          f"length {best.length} vs bound {cube}")

    # image monotonicity: columns of a longer word sit inside its suffix's
    short = [w for w in pool if len(w) <= 3]
    bad = next(((u, s) for u in short for s in short
                if nonzero_columns(matrix_of_word(dfa, u + s))
                & ~nonzero_columns(matrix_of_word(dfa, s))), None)
    check("image-monotone", bad is None, f"counterexample {bad}" if bad else "")

    # reset matrix shape and rank-by-columns
    M_min = matrix_of_word(dfa, s_min)
    check("reset-matrix", nonzero_columns(M_min) == 1 << q and rank(M_min) == 1)
    bad = next((w for w in pool
                if rank(matrix_of_word(dfa, w)) != linspace.span_dimension(
                    _dense_rows(matrix_of_word(dfa, w)))), None)
    check("rank-by-columns", bad is None,
          f"counterexample {word_to_str(bad)}" if bad else "")

    # matrix space dimensions
    basis = linspace.standard_basis(n, dfa.k)
    dim = linspace.span_dimension(basis)
    check("basis-dimension", dim == n * (dfa.k - 1) + 1,
          f"got {dim}, expected {n * (dfa.k - 1) + 1}")
    drop = all(linspace.span_dimension(basis[:i] + basis[i + 1:]) == dim - 1
               for i in range(len(basis)))
    check("basis-independence", drop)
    ech, witnesses = linspace.word_matrix_span(dfa)
    check("word-space-dimension", ech.dimension <= n * (n - 1) + 1,
          f"dim {ech.dimension}")
    for c, Mc in enumerate(matrices_of_letters(dfa)):
        if nonzero_columns(Mc) != dfa.full_set:
            dim = linspace.span_dimension(
                [linspace.flatten(multiply(g, Mc)) for _, g in witnesses])
            check(f"last-letter-dimension-{word_to_str((c,))}",
                  dim <= (n - 1) ** 2, f"dim {dim} vs {(n - 1) ** 2}")

    # decomposition coefficient sums and series linearity
    flats = [linspace.flatten(g) for _, g in witnesses]
    witness_words = [w for w, _ in witnesses]
    solver = linspace.SpanSolver(flats)
    witness_values = [series.series_value(ctx, w) for w in witness_words]
    bad_sum = bad_lin = None
    for w in pool:
        d = solver.solve(linspace.flatten(matrix_of_word(dfa, w)))
        if d is None or linspace.coefficient_sum(d) != 1:
            bad_sum = bad_sum or w
            continue
        combined = sum((lam * witness_values[i] for i, lam in d.coefficients),
                       start=Fraction(0))
        if combined != series.series_value(ctx, w):
            bad_lin = bad_lin or w
    check("coefficient-sum", bad_sum is None,
          f"counterexample {word_to_str(bad_sum)}" if bad_sum else "")
    check("series-linearity", bad_lin is None,
          f"counterexample {word_to_str(bad_lin)}" if bad_lin else "")

    # constant-level spans: a word matrix inside a level's span has that value
    profile = series.suffix_profile(ctx, s_min)
    suffixes = [s_min[len(s_min) - length:] for length, _ in profile]
    values = {length: value for length, value in profile}
    ok, detail = True, ""
    for level in range(0, n - 1):
        members = [u for u in suffixes if values[len(u)] == level]
        if len(members) < 2:
            continue
        lech = linspace.RowEchelon(n * n)
        for u in members:
            lech.add(linspace.flatten(matrix_of_word(dfa, u)))
        for w in pool:
            if lech.contains(linspace.flatten(matrix_of_word(dfa, w))):
                if series.series_value(ctx, w) != level:
                    ok, detail = False, f"{word_to_str(w)} at level {level}"
                    break
    check("constant-level-span", ok, detail)

    # letter closure of the saturated span, with a randomized membership probe
    closed, witness = linspace.letter_closure_check(dfa, [g for _, g in witnesses])
    check("letter-closure", closed, str(witness) if witness else "")
    rng = random.Random(7 * n + dfa.k)
    ok = True
    for _ in range(10):
        coeffs = [rng.randint(-2, 2) for _ in flats]
        combo = [sum(c * f[i] for c, f in zip(coeffs, flats))
                 for i in range(n * n)]
        t = pool[rng.randrange(len(pool))]
        if not ech.contains(linspace.left_multiply_flat(matrix_of_word(dfa, t), combo)):
            ok = False
            break
    check("span-word-stability", ok)

    # suffix space dimensions at every level
    dims = []
    for i in range(1, n):
        try:
            dims.append(series.suffix_space_dimension(ctx, s_min, i))
        except AssertionError as e:
            check("suffix-space-bound", False, f"i={i}: {e}")
            break
    else:
        check("suffix-space-bound", True, f"dims {dims}")

    # irreducibility facts about the minimal word
    check("irreducible", sync.is_irreducible(dfa, s_min, q))
    check("suffix-distinct", sync.suffix_distinctness_check(dfa, s_min, q))
    try:
        near = sync.near_sync_suffixes(dfa, s_min, q)
        check("near-sync-suffixes", len(near) <= n, f"{len(near)} suffixes")
    except AssertionError as e:
        check("near-sync-suffixes", False, str(e))
    check("suffix-independence", suffix_closed_dimension_check(dfa, s_min))

    # left stability and reset collapse over sampled triples
    rng = random.Random(13 * n + dfa.k)
    triples = [(pool[rng.randrange(len(pool))], pool[rng.randrange(len(pool))],
                pool[rng.randrange(len(pool))]) for _ in range(200)]
    bad = next(((a, u, v, qq) for a, u, v in triples for qq in range(n)
                if not sync.left_stability_check(dfa, a, u, v, qq)), None)
    check("left-stability", bad is None, str(bad) if bad else "")
    bad = next(((t, u, v, qq) for t, u, v in triples for qq in range(n)
                if not sync.reset_collapse_check(dfa, t, u, v, qq)), None)
    check("reset-collapse", bad is None, str(bad) if bad else "")

    # diagnostic only, never failed: composition of the value-0 q-class of
    # the identity (invertible members vs. singular members of rank > 1)
    zero_class = [w for w in pool
                  if series.series_value(ctx, w) == 0
                  and sync.q_equivalent(matrix_of_word(dfa, w), identity(n), q)]
    invertible = sum(1 for w in zero_class
                     if nonzero_columns(matrix_of_word(dfa, w)) == dfa.full_set)
    singular_big = sum(1 for w in zero_class
                       if 1 < rank(matrix_of_word(dfa, w)) < n)
    check("zero-class-composition", True,
          f"{len(zero_class)} sampled words: {invertible} invertible, "
          f"{singular_big} singular of rank > 1")

    # expected threshold counts, when pinned
    if "threshold_counts" in expect:
        got = {bound: series.threshold_count(profile, bound)
               for bound in expect["threshold_counts"]}
        check("threshold-counts", got == expect["threshold_counts"],
              f"got {got}, expected {expect['threshold_counts']}")
    if "paper_word" in expect:
        w = expect["paper_word"]
        img = image(dfa, dfa.full_set, w)
        check("known-word-synchronizes",
              img & (img - 1) == 0 and len(w) == best.length,
              word_to_str(w, group=5))
    return results


def _dense_rows(M) -> list[list[int]]:
    n = M.n
    return [[1 if M.rows[i] == j else 0 for j in range(n)] for i in range(n)]


EXAMPLE_EXPECTATIONS = {
    "cerny:3": {"reset_length": 4},
    "cerny:4": {"reset_length": 9},
    "cerny:5": {"reset_length": 16},
    "cerny:6": {"reset_length": 25},
    "kari": {"reset_length": 25,
             "threshold_counts": {1: 25, 2: 17, 3: 11, 4: 6},
             "paper_word": KARI_WORD},
    "roman": {"reset_length": 16,
              "threshold_counts": {1: 16, 2: 10, 3: 4},
              "paper_word": ROMAN_WORD},
}


def verify_example_suite() -> dict[str, list[CheckResult]]:
    """The assertion battery over the built-in automata."""
    out = {}
    for name, expect in EXAMPLE_EXPECTATIONS.items():
        if name.startswith("cerny:"):
            nn = int(name.split(":")[1])
            dfa = cerny_automaton(nn)
            expect = dict(expect, paper_word=cerny_word(nn))
        elif name == "kari":
            dfa = kari_automaton()
        else:
            dfa = roman_automaton()
        out[name] = verify_automaton(dfa, name, expect)
    return out
