"""Reset-word search and the q-column calculus on word matrices.

The shortest reset word comes from a breadth-first search over the subset
automaton, reconstructed through predecessor links; with letters expanded
in index order the result is the lexicographically least minimal word.
The q-machinery compares matrices only through the set of rows holding a
unit in column q, kept as bitmasks throughout.
"""

from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass
from typing import Sequence

from .automaton import Dfa, Word, image
from .errors import CapacityError, DfaError
from .word_matrix import WordMatrix, matrix_of_word, multiply

DEFAULT_SUBSET_LIMIT = 24
SUBSET_LIMIT_ENV = "SYNCWORD_SUBSET_LIMIT"


def _subset_limit(limit: int | None) -> int:
    if limit is not None:
        return limit
    env = os.environ.get(SUBSET_LIMIT_ENV)
    if env:
        try:
            return int(env)
        except ValueError:
            raise DfaError(f"{SUBSET_LIMIT_ENV}={env!r} is not an integer") from None
    return DEFAULT_SUBSET_LIMIT


@dataclass(frozen=True)
class ResetResult:
    """A verified reset word with search metadata."""

    word: Word
    length: int
    target: int
    states_expanded: int


def is_synchronizing(dfa: Dfa) -> bool:
    """Pair-merging criterion: every two states can be sent to one state.

    Backward propagation over unordered state pairs from the directly
    mergeable ones, O(n^2 k); avoids the exponential subset search.
    """
    n = dfa.n
    if n == 1:
        return True
    pair_id = {}
    pairs = []
    for p in range(n):
        for q in range(p + 1, n):
            pair_id[(p, q)] = len(pairs)
            pairs.append((p, q))
    preds: list[list[int]] = [[] for _ in pairs]
    mergeable = [False] * len(pairs)
    queue = deque()
    for pid, (p, q) in enumerate(pairs):
        for row in dfa.delta:
            p2, q2 = row[p], row[q]
            if p2 == q2:
                if not mergeable[pid]:
                    mergeable[pid] = True
                    queue.append(pid)
            else:
                tid = pair_id[(p2, q2) if p2 < q2 else (q2, p2)]
                preds[tid].append(pid)
    while queue:
        tid = queue.popleft()
        for pid in preds[tid]:
            if not mergeable[pid]:
                mergeable[pid] = True
                queue.append(pid)
    return all(mergeable)


def shortest_reset_word(dfa: Dfa, limit: int | None = None) -> ResetResult | None:
    """BFS over the subset automaton from the full set to any singleton.

    Returns None when the automaton is not synchronizing.  Among minimal
    words the lexicographically least (by letter index) is returned: the
    FIFO queue together with ascending letter expansion discovers subsets
    in lex order of their least shortest incoming words.  Raises
    CapacityError when n exceeds the subset cap (default 24, overridable
    via the SYNCWORD_SUBSET_LIMIT environment variable or `limit`).
    """
    n = dfa.n
    cap = _subset_limit(limit)
    if n > cap:
        raise CapacityError(f"subset BFS over 2^{n} states exceeds cap {cap}")
    full = dfa.full_set
    bit_step = [[1 << row[p] for p in range(n)] for row in dfa.delta]

    def expand(mask: int, c: int) -> int:
        out = 0
        table = bit_step[c]
        m = mask
        while m:
            low = m & (-m)
            out |= table[low.bit_length() - 1]
            m ^= low
        return out

    def reconstruct(mask: int) -> Word:
        word = []
        while parent[mask] is not None:
            prev, c = parent[mask]
            word.append(c)
            mask = prev
        word.reverse()
        return tuple(word)

    parent: dict[int, tuple[int, int] | None] = {full: None}
    if full & (full - 1) == 0:
        return ResetResult((), 0, full.bit_length() - 1, 0)
    queue = deque([full])
    expanded = 0
    while queue:
        mask = queue.popleft()
        expanded += 1
        for c in range(dfa.k):
            t = expand(mask, c)
            if t not in parent:
                parent[t] = (mask, c)
                if t & (t - 1) == 0:
                    w = reconstruct(t)
                    return ResetResult(w, len(w), t.bit_length() - 1, expanded)
                queue.append(t)
    return None


# ---------------------------------------------------------------------------
# q-columns

def q_column(M: WordMatrix, q: int) -> int:
    """Bitmask of rows holding a unit in column q: the preimage of q."""
    if not 0 <= q < M.n:
        raise DfaError(f"state {q} out of range [0, {M.n})")
    out = 0
    for i, j in enumerate(M.rows):
        if j == q:
            out |= 1 << i
    return out


def q_equivalent(A: WordMatrix, B: WordMatrix, q: int) -> bool:
    """Equal q-columns."""
    if A.n != B.n:
        raise DfaError(f"dimension mismatch: {A.n} vs {B.n}")
    return q_column(A, q) == q_column(B, q)


def q_preceq(B: WordMatrix, A: WordMatrix, q: int) -> bool:
    """Is the q-column of B contained in the q-column of A?"""
    if A.n != B.n:
        raise DfaError(f"dimension mismatch: {A.n} vs {B.n}")
    b, a = q_column(B, q), q_column(A, q)
    return b & ~a == 0


def left_stability_check(dfa: Dfa, a: Sequence[int], u: Sequence[int],
                         v: Sequence[int], q: int) -> bool:
    """Left multiplication preserves the q-relations on this triple.

    Verifies that M_u ~q M_v forces M_au ~q M_av, and that the q-column of
    M_v inside M_u's forces the same containment after prefixing a.  Both
    implications hold vacuously when the antecedent fails.
    """
    Ma = matrix_of_word(dfa, a)
    Mu = matrix_of_word(dfa, u)
    Mv = matrix_of_word(dfa, v)
    ok = True
    if q_equivalent(Mu, Mv, q):
        ok = ok and q_equivalent(multiply(Ma, Mu), multiply(Ma, Mv), q)
    if q_preceq(Mv, Mu, q):
        ok = ok and q_preceq(multiply(Ma, Mv), multiply(Ma, Mu), q)
    return ok


def reset_collapse_check(dfa: Dfa, t: Sequence[int], u: Sequence[int],
                         v: Sequence[int], q: int) -> bool:
    """Collapse to full equality at reset matrices, on this triple.

    When M_u ~q M_v (or M_v's q-column sits inside M_u's) and M_tv is the
    reset matrix targeting q, then M_tu must equal M_tv as a whole matrix.
    True when the implication holds (vacuously if premises fail).
    """
    Mt = matrix_of_word(dfa, t)
    Mu = matrix_of_word(dfa, u)
    Mv = matrix_of_word(dfa, v)
    if not (q_equivalent(Mu, Mv, q) or q_preceq(Mv, Mu, q)):
        return True
    Mtv = multiply(Mt, Mv)
    if q_column(Mtv, q) != dfa.full_set:
        return True
    return multiply(Mt, Mu) == Mtv


# ---------------------------------------------------------------------------
# irreducibility

def _check_sync_to(dfa: Dfa, s: Sequence[int], q: int) -> Word:
    s = dfa.check_word(s)
    if not 0 <= q < dfa.n:
        raise DfaError(f"state {q} out of range [0, {dfa.n})")
    if image(dfa, dfa.full_set, s) != 1 << q:
        raise DfaError("word does not reset the automaton to the given state")
    return s


def _prefix_maps(dfa: Dfa, s: Word) -> list[list[int]]:
    maps = [list(range(dfa.n))]
    for c in s:
        row = dfa.delta[c]
        maps.append([row[p] for p in maps[-1]])
    return maps


def _suffix_maps(dfa: Dfa, s: Word) -> list[list[int]]:
    """maps[j] is the state mapping of the suffix s[j:]."""
    n = dfa.n
    maps = [list(range(n)) for _ in range(len(s) + 1)]
    for j in range(len(s) - 1, -1, -1):
        row = dfa.delta[s[j]]
        nxt = maps[j + 1]
        maps[j] = [nxt[row[p]] for p in range(n)]
    return maps


def _removable_split(dfa: Dfa, s: Word, q: int) -> tuple[int, int] | None:
    """Leftmost-longest (i, j) with s[i:j] nonempty and M_{s[:i] s[j:]} ~q M_s,
    or None when s is irreducible."""
    n = dfa.n
    pre = _prefix_maps(dfa, s)
    suf = _suffix_maps(dfa, s)
    for i in range(len(s)):
        for j in range(len(s), i, -1):
            f, g = pre[i], suf[j]
            if all(g[f[r]] == q for r in range(n)):
                return i, j
    return None


def is_irreducible(dfa: Dfa, s: Sequence[int], q: int) -> bool:
    """No factorization s = u t v with t nonempty collapses to M_{uv} ~q M_s.

    Since M_s has a full q-column, a collapse means u v alone already resets
    everything to q; all O(|s|^2) split pairs are checked.
    """
    s = _check_sync_to(dfa, s, q)
    return _removable_split(dfa, s, q) is None


def reduce_word(dfa: Dfa, s: Sequence[int], q: int) -> Word:
    """Strip removable infixes until the word is irreducible.

    Each step removes the leftmost-longest infix whose deletion leaves the
    q-column intact (deterministic greedy order); the result still resets
    to q and is never longer than s.
    """
    s = _check_sync_to(dfa, s, q)
    while True:
        split = _removable_split(dfa, s, q)
        if split is None:
            return s
        i, j = split
        s = s[:i] + s[j:]


def suffix_distinctness_check(dfa: Dfa, s: Sequence[int], q: int) -> bool:
    """All suffix matrices of a reset word differ at column q.

    Checks that the |s|+1 suffix q-columns are pairwise distinct, and the
    sharper fact that a longer suffix's q-column is never contained in a
    shorter one's.  Guaranteed to hold when s is irreducible; a reducible
    word (a repeated reset word, say) fails it, consistently with
    is_irreducible.
    """
    s = _check_sync_to(dfa, s, q)
    suf = _suffix_maps(dfa, s)
    cols = []
    for f in suf:
        col = 0
        for r in range(dfa.n):
            if f[r] == q:
                col |= 1 << r
        cols.append(col)
    # cols[j] belongs to suffix s[j:]; smaller j = longer suffix
    for j1 in range(len(cols)):
        for j2 in range(j1 + 1, len(cols)):
            longer, shorter = cols[j1], cols[j2]
            if longer == shorter:
                return False
            if longer & ~shorter == 0:
                return False
    return True


def near_sync_suffixes(dfa: Dfa, s: Sequence[int], q: int) -> list[Word]:
    """Suffixes of a minimal reset word whose value is n-2: one state astray.

    Each such suffix maps all states but one to q.  Postconditions checked
    here: there are at most n of them, the astray states are pairwise
    distinct, and (when any exist) some letter prefixed to one of them
    already synchronizes.
    """
    s = _check_sync_to(dfa, s, q)
    best = shortest_reset_word(dfa)
    if best is None or best.length != len(s):
        raise DfaError("word is not a minimal reset word")
    n = dfa.n
    suf = _suffix_maps(dfa, s)
    found: list[Word] = []
    astray: list[int] = []
    for length in range(0, len(s) + 1):
        f = suf[len(s) - length]
        odd = [r for r in range(n) if f[r] != q]
        if len(odd) == 1:
            found.append(s[len(s) - length:])
            astray.append(odd[0])
    assert len(found) <= n, (len(found), n)
    assert len(set(astray)) == len(astray), astray
    if found:
        full = dfa.full_set
        assert any(
            image(dfa, full, (c,) + u) & (image(dfa, full, (c,) + u) - 1) == 0
            for c in range(dfa.k) for u in found
        ), "no letter completes a near-synchronizing suffix"
    return found
