"""Integer-valued rational series attached to a target state set.

For a target set P the value of a word w is |{p : p.w in P}| - |P|: the
number of states pulled into P beyond the ones already counted there.  For
a singleton P = {q} and a word resetting to q the value is n-1, the series
of the empty word is 0, and every value lies in [-|P|, n-|P|].
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .automaton import Dfa, image
from .errors import DfaError
from . import linspace
from .word_matrix import matrix_of_word

Profile = list[tuple[int, int]]


@dataclass(frozen=True)
class SeriesContext:
    """An automaton together with the nonempty target set P (a bitmask)."""

    dfa: Dfa
    targets: int

    def __post_init__(self):
        if self.targets <= 0:
            raise DfaError("target set must be nonempty")
        if self.targets >> self.dfa.n:
            raise DfaError(f"target set {bin(self.targets)} has bits outside "
                           f"[0, {self.dfa.n})")

    @classmethod
    def for_state(cls, dfa: Dfa, q: int) -> "SeriesContext":
        if not 0 <= q < dfa.n:
            raise DfaError(f"state {q} out of range [0, {dfa.n})")
        return cls(dfa, 1 << q)

    @property
    def target_size(self) -> int:
        return self.targets.bit_count()


def series_value(ctx: SeriesContext, w: Sequence[int]) -> int:
    """Value of w: preimage count of the target set minus the target size."""
    dfa = ctx.dfa
    w = dfa.check_word(w)
    f = list(range(dfa.n))
    for c in w:
        row = dfa.delta[c]
        f = [row[p] for p in f]
    pre = sum(1 for p in range(dfa.n) if ctx.targets >> f[p] & 1)
    return pre - ctx.target_size


def suffix_profile(ctx: SeriesContext, s: Sequence[int]) -> Profile:
    """(suffix length, value) for every right subword of s, lengths 0..|s|.

    Computed right to left in O(n |s|): extending a suffix by one letter on
    the left composes the letter's action before the suffix mapping.
    """
    dfa = ctx.dfa
    s = dfa.check_word(s)
    n = dfa.n
    f = list(range(n))  # mapping of the current suffix
    out = [(0, 0)]
    for pos in range(len(s) - 1, -1, -1):
        row = dfa.delta[s[pos]]
        f = [f[row[p]] for p in range(n)]
        pre = sum(1 for p in range(n) if ctx.targets >> f[p] & 1)
        out.append((len(s) - pos, pre - ctx.target_size))
    return out


def threshold_count(profile: Profile, bound: int) -> int:
    """Number of nonempty suffixes with value >= bound.

    Suffixes are counted by length (distinct positions); the empty suffix is
    never counted, matching the convention that reproduces the reference
    counts of the built-in automata.
    """
    return sum(1 for length, value in profile if length > 0 and value >= bound)


def suffix_space_dimension(ctx: SeriesContext, s: Sequence[int], i: int) -> int:
    """Exact dimension of span{ M_v : v a suffix of s, value(v) >= n-i }.

    Requires a singleton target, s synchronizing, and 1 <= i <= n-1.  The
    dimension never exceeds (i-1)n+1: all qualifying suffix matrices share
    the column support of the shortest of them, which has at most i nonzero
    columns.
    """
    dfa = ctx.dfa
    n = dfa.n
    if ctx.target_size != 1:
        raise DfaError("suffix_space_dimension needs a singleton target set")
    if not 1 <= i <= n - 1:
        raise DfaError(f"need 1 <= i <= n-1, got i={i}")
    s = dfa.check_word(s)
    img = image(dfa, dfa.full_set, s)
    if img & (img - 1):
        raise DfaError("word is not synchronizing")
    ech = linspace.RowEchelon(n * n)
    for length, value in suffix_profile(ctx, s):
        if value >= n - i:
            ech.add(linspace.flatten(matrix_of_word(dfa, s[len(s) - length:])))
    dim = ech.dimension
    assert dim <= (i - 1) * n + 1, (dim, i, n)
    return dim


def series_linearity_check(
    ctx: SeriesContext, target: Sequence[int], parts: Sequence[Sequence[int]]
) -> bool | None:
    """Does the series respect a decomposition of M_target over {M_part}?

    Decomposes the target's matrix over the parts' matrices exactly;
    returns None when it is not in their span (not applicable, distinct
    from a failure), else whether value(target) equals the coefficient
    combination of the parts' values.
    """
    dfa = ctx.dfa
    target = dfa.check_word(target)
    parts = [dfa.check_word(p) for p in parts]
    basis = [linspace.flatten(matrix_of_word(dfa, p)) for p in parts]
    d = linspace.decompose(linspace.flatten(matrix_of_word(dfa, target)), basis)
    if d is None:
        return None
    expected = sum((lam * series_value(ctx, parts[i]) for i, lam in d.coefficients),
                   Fraction(0))
    return expected == series_value(ctx, target)
