"""Exact rational linear algebra over flattened word matrices.

Matrices are flattened row-major into vectors of length n^2 over the field
of rationals (stdlib Fraction, so every dimension claim is checked with
zero tolerance).  A shared incremental row-echelon accumulator powers span
dimensions, membership tests and decompositions in one pass.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .automaton import Dfa
from .errors import DfaError
from .word_matrix import WordMatrix, identity, matrices_of_letters, multiply

FlatMatrix = tuple[Fraction, ...]


def flatten(M: WordMatrix) -> FlatMatrix:
    """Row-major n^2 vector of the dense 0/1 view."""
    n = M.n
    out = [Fraction(0)] * (n * n)
    for i, j in enumerate(M.rows):
        out[i * n + j] = Fraction(1)
    return tuple(out)


def _as_fractions(vec: Sequence) -> list[Fraction]:
    return [Fraction(x) for x in vec]


class RowEchelon:
    """Incremental reduced row-echelon accumulator over Q^width.

    Stored rows are mutually reduced and pivot-normalized, so reducing an
    incoming vector by every stored row (in any order) leaves exactly the
    component outside the span.  Single-writer while mutable.
    """

    def __init__(self, width: int):
        self.width = width
        self.pivot_rows: list[tuple[int, list[Fraction]]] = []

    @property
    def dimension(self) -> int:
        return len(self.pivot_rows)

    def _residual(self, vec: Sequence) -> list[Fraction]:
        vec = _as_fractions(vec)
        if len(vec) != self.width:
            raise DfaError(f"vector width {len(vec)} != {self.width}")
        for col, row in self.pivot_rows:
            f = vec[col]
            if f:
                for j in range(self.width):
                    if row[j]:
                        vec[j] -= f * row[j]
        return vec

    def contains(self, vec: Sequence) -> bool:
        """Span membership, exact."""
        return not any(self._residual(vec))

    def add(self, vec: Sequence) -> bool:
        """Insert a vector; True iff it enlarged the span."""
        res = self._residual(vec)
        for col in range(self.width):
            if res[col]:
                inv = 1 / res[col]
                new_row = [x * inv for x in res]
                # keep stored rows mutually reduced
                for _, row in self.pivot_rows:
                    f = row[col]
                    if f:
                        for j in range(self.width):
                            if new_row[j]:
                                row[j] -= f * new_row[j]
                self.pivot_rows.append((col, new_row))
                return True
        return False


def span_dimension(vectors: Sequence[Sequence]) -> int:
    """Rank of a list of equal-width vectors via exact elimination."""
    vectors = list(vectors)
    if not vectors:
        return 0
    ech = RowEchelon(len(vectors[0]))
    for v in vectors:
        ech.add(v)
    return ech.dimension


def standard_basis(n: int, k: int, fixed_col: int | None = None) -> list[FlatMatrix]:
    """Basis of the row-functional matrices supported on k columns.

    Returns the n(k-1) matrices with a single unit at (i, j) for each row i
    and each non-fixed support column j (every other row's unit sits in
    fixed_col), plus the matrix with all units in fixed_col: n(k-1)+1
    matrices in total, linearly independent.  The support is fixed_col plus
    the k-1 smallest other column indices; by default fixed_col = k-1, so
    the support is the first k columns.
    """
    if not 1 <= k <= n:
        raise DfaError(f"need 1 <= k <= n, got k={k}, n={n}")
    if fixed_col is None:
        fixed_col = k - 1
    if not 0 <= fixed_col < n:
        raise DfaError(f"fixed_col {fixed_col} out of range [0, {n})")
    others = [j for j in range(n) if j != fixed_col][:k - 1]

    def unit_rows(i: int, j: int) -> FlatMatrix:
        rows = [fixed_col] * n
        rows[i] = j
        return flatten(WordMatrix(tuple(rows)))

    basis = [unit_rows(i, j) for j in others for i in range(n)]
    basis.append(flatten(WordMatrix((fixed_col,) * n)))
    return basis


@dataclass(frozen=True)
class Decomposition:
    """Exact coefficients over a basis list; omitted indices mean zero."""

    coefficients: tuple[tuple[int, Fraction], ...]

    def coefficient(self, index: int) -> Fraction:
        for i, lam in self.coefficients:
            if i == index:
                return lam
        return Fraction(0)


class SpanSolver:
    """Echelonized basis list that remembers how each row was combined.

    Factoring the basis once makes decomposing many targets against the
    same spanning set cheap; each stored row carries its expression in the
    original list, so solutions fall out of plain forward reduction.
    """

    def __init__(self, basis: Sequence[Sequence]):
        basis = [_as_fractions(b) for b in basis]
        self.size = len(basis)
        self.width = len(basis[0]) if basis else 0
        # (pivot column, reduced vector, combination over the input list)
        self.rows: list[tuple[int, list[Fraction], list[Fraction]]] = []
        for i, vec in enumerate(basis):
            if len(vec) != self.width:
                raise DfaError(f"vector width {len(vec)} != {self.width}")
            comb = [Fraction(0)] * self.size
            comb[i] = Fraction(1)
            self._insert(vec, comb)

    @property
    def dimension(self) -> int:
        return len(self.rows)

    def _eliminate(self, vec: list[Fraction], comb: list[Fraction]):
        for col, rvec, rcomb in self.rows:
            f = vec[col]
            if f:
                for j in range(self.width):
                    if rvec[j]:
                        vec[j] -= f * rvec[j]
                for j in range(self.size):
                    if rcomb[j]:
                        comb[j] -= f * rcomb[j]

    def _insert(self, vec: list[Fraction], comb: list[Fraction]):
        self._eliminate(vec, comb)
        for col in range(self.width):
            if vec[col]:
                inv = 1 / vec[col]
                vec = [x * inv for x in vec]
                comb = [x * inv for x in comb]
                for _, rvec, rcomb in self.rows:
                    f = rvec[col]
                    if f:
                        for j in range(self.width):
                            if vec[j]:
                                rvec[j] -= f * vec[j]
                        for j in range(self.size):
                            if comb[j]:
                                rcomb[j] -= f * comb[j]
                self.rows.append((col, vec, comb))
                return

    def solve(self, target: Sequence) -> Decomposition | None:
        """Coefficients over the input list, or None if target is outside."""
        vec = _as_fractions(target)
        if len(vec) != self.width:
            raise DfaError(f"vector width {len(vec)} != {self.width}")
        mu = [Fraction(0)] * self.size
        for col, rvec, rcomb in self.rows:
            f = vec[col]
            if f:
                for j in range(self.width):
                    if rvec[j]:
                        vec[j] -= f * rvec[j]
                for j in range(self.size):
                    if rcomb[j]:
                        mu[j] += f * rcomb[j]
        if any(vec):
            return None
        return Decomposition(tuple((i, lam) for i, lam in enumerate(mu) if lam))


def decompose(target: Sequence, basis: Sequence[Sequence]) -> Decomposition | None:
    """Express target as an exact linear combination of the basis list.

    Returns None when target is outside the span; the result is the
    deterministic greedy-elimination solution, and when the basis list is
    independent it is the unique one.
    """
    if not basis:
        return None if any(Fraction(x) for x in target) else Decomposition(())
    return SpanSolver(basis).solve(target)


def coefficient_sum(d: Decomposition) -> Fraction:
    """Sum of the coefficients; equals 1 for any representation of a word matrix
    over word matrices (every such matrix has total cell sum n)."""
    return sum((lam for _, lam in d.coefficients), Fraction(0))


def combine(basis: Sequence[Sequence], d: Decomposition) -> FlatMatrix:
    """Re-sum a decomposition; reproduces the target exactly."""
    basis = [_as_fractions(b) for b in basis]
    width = len(basis[0]) if basis else 0
    out = [Fraction(0)] * width
    for i, lam in d.coefficients:
        for j in range(width):
            out[j] += lam * basis[i][j]
    return tuple(out)


def left_multiply_flat(wm: WordMatrix, flat: Sequence) -> FlatMatrix:
    """Product wm . F for an arbitrary flat matrix F: row i of the result is
    row wm.rows[i] of F."""
    n = wm.n
    flat = _as_fractions(flat)
    if len(flat) != n * n:
        raise DfaError(f"flat width {len(flat)} != {n * n}")
    out = []
    for i in range(n):
        src = wm.rows[i] * n
        out.extend(flat[src:src + n])
    return tuple(out)


def letter_closure_check(
    dfa: Dfa, generators: Sequence[WordMatrix]
) -> tuple[bool, tuple[int, int] | None]:
    """Is span(generators) stable under left multiplication by every letter?

    Checks M_letter . g for every letter and every generator g.  When that
    holds, the span is stable under M_t for every word t.  On failure
    returns (False, (letter, generator_index)) as the witness.
    """
    if not generators:
        return True, None
    n = generators[0].n
    if n != dfa.n:
        raise DfaError(f"generator dimension {n} != automaton size {dfa.n}")
    ech = RowEchelon(n * n)
    for g in generators:
        ech.add(flatten(g))
    for c, Mc in enumerate(matrices_of_letters(dfa)):
        for gi, g in enumerate(generators):
            if not ech.contains(flatten(multiply(Mc, g))):
                return False, (c, gi)
    return True, None


def word_matrix_span(dfa: Dfa) -> tuple[RowEchelon, list[tuple[tuple[int, ...], WordMatrix]]]:
    """Span of the matrices of ALL words, by letter-closure saturation.

    Starts from the identity and left-multiplies by letters, keeping only
    matrices that enlarge the span.  Once no product of a letter with a
    kept matrix adds dimension, the span is closed under every M_t and so
    contains every word matrix.  Returns the accumulator and the kept
    (word, matrix) witnesses.
    """
    n = dfa.n
    ech = RowEchelon(n * n)
    witnesses: list[tuple[tuple[int, ...], WordMatrix]] = []
    frontier: list[tuple[tuple[int, ...], WordMatrix]] = []
    E = identity(n)
    ech.add(flatten(E))
    witnesses.append(((), E))
    frontier.append(((), E))
    letters = matrices_of_letters(dfa)
    while frontier:
        fresh = []
        for c, Mc in enumerate(letters):
            for w, g in frontier:
                cand = multiply(Mc, g)
                if ech.add(flatten(cand)):
                    entry = ((c,) + w, cand)
                    witnesses.append(entry)
                    fresh.append(entry)
        frontier = fresh
    return ech, witnesses
