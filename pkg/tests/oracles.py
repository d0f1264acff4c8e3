"""Independent brute-force oracles used to freeze expected test values.

These deliberately avoid the library's own algorithms: reset lengths come
from plain word enumeration, ranks from fraction-free integer elimination,
reachability from per-state searches.
"""

from itertools import product
from math import gcd

from syncword import Dfa, apply, image


def brute_minimal_reset(dfa: Dfa, max_len: int):
    """First synchronizing word in length-then-lex order, or None."""
    full = dfa.full_set
    for length in range(max_len + 1):
        for w in product(range(dfa.k), repeat=length):
            img = image(dfa, full, w)
            if img & (img - 1) == 0:
                return w
    return None


def int_rank(vectors):
    """Rank over the rationals by fraction-free integer elimination."""
    rows = []  # (pivot index, integer vector), pivots ascending
    rank = 0
    for vec in vectors:
        vec = list(vec)
        width = len(vec)
        for pivot, row in rows:
            c = vec[pivot]
            if c:
                # row is zero before its pivot, so this scales vec uniformly
                a = row[pivot]
                vec = [x * a - y * c for x, y in zip(vec, row)]
        for idx in range(width):
            if vec[idx]:
                g = 0
                for x in vec:
                    g = gcd(g, x)
                vec = [x // g for x in vec]
                if vec[idx] < 0:
                    vec = [-x for x in vec]
                rows.append((idx, vec))
                rows.sort(key=lambda pr: pr[0])
                rank += 1
                break
    return rank


def int_flat(rows_map, n):
    """Row-major 0/1 flattening of a row -> column map, as plain ints."""
    out = [0] * (n * n)
    for i, j in enumerate(rows_map):
        out[i * n + j] = 1
    return out


def all_pairs_reachable(dfa: Dfa) -> bool:
    """Strong connectivity by a separate search from every state."""
    for start in range(dfa.n):
        seen = {start}
        stack = [start]
        while stack:
            p = stack.pop()
            for c in range(dfa.k):
                t = dfa.delta[c][p]
                if t not in seen:
                    seen.add(t)
                    stack.append(t)
        if len(seen) != dfa.n:
            return False
    return True


def preimage_count(dfa: Dfa, w, q: int) -> int:
    """States sent into q by w, counted one by one."""
    return sum(1 for p in range(dfa.n) if apply(dfa, p, w) == q)
