from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, strategies as st

from syncword import (DfaError, Decomposition, RowEchelon, WordMatrix,
                      cerny_automaton, coefficient_sum, decompose, flatten,
                      identity, kari_automaton, letter_closure_check,
                      matrix_of_word, span_dimension, standard_basis,
                      word_matrix_span)
from syncword.linspace import SpanSolver, combine, left_multiply_flat

from oracles import int_flat, int_rank


def family_on_columns(n, k):
    """All k^n row-functional matrices supported on the first k columns."""
    return [flatten(WordMatrix(f)) for f in product(range(k), repeat=n)]


def test_flatten():
    assert flatten(WordMatrix((1, 0))) == (0, 1, 1, 0)


def test_row_echelon_membership():
    ech = RowEchelon(3)
    assert ech.add([1, 0, 0])
    assert ech.add([1, 1, 0])
    assert not ech.add([3, 2, 0])
    assert ech.dimension == 2
    assert ech.contains([0, 5, 0])
    assert not ech.contains([0, 0, 1])
    with pytest.raises(DfaError):
        ech.add([1, 0])


small_vector_lists = st.integers(2, 5).flatmap(
    lambda w: st.lists(st.lists(st.integers(-3, 3), min_size=w, max_size=w),
                       min_size=1, max_size=6))


@given(small_vector_lists, st.randoms(use_true_random=False))
def test_span_dimension_invariant_under_permutation_and_scaling(vecs, rng):
    base = span_dimension(vecs)
    shuffled = list(vecs)
    rng.shuffle(shuffled)
    assert span_dimension(shuffled) == base
    scales = [Fraction(rng.choice([1, 2, -1, 3]), rng.choice([1, 2, 5]))
              for _ in vecs]
    scaled = [[s * x for x in v] for s, v in zip(scales, vecs)]
    assert span_dimension(scaled) == base


@given(small_vector_lists)
def test_span_dimension_matches_integer_oracle(vecs):
    assert span_dimension(vecs) == int_rank(vecs)


def test_span_dimension_families():
    assert span_dimension([]) == 0
    assert span_dimension(family_on_columns(3, 2)) == 4
    # matrices avoiding one column of a 4-state space: exactly (4-1)^2
    dim = span_dimension(family_on_columns(4, 3))
    assert dim == 9
    assert dim <= (4 - 1) ** 2


def test_standard_basis_counts_and_dimensions():
    b = standard_basis(3, 2)
    assert len(b) == 4 and span_dimension(b) == 4
    b = standard_basis(2, 1)
    assert len(b) == 1 and span_dimension(b) == 1
    b = standard_basis(6, 5)
    assert len(b) == 25 and span_dimension(b) == 25


def test_standard_basis_removal_drops_dimension():
    b = standard_basis(4, 3)
    full = span_dimension(b)
    assert full == len(b)
    for i in range(len(b)):
        assert span_dimension(b[:i] + b[i + 1:]) == full - 1


def test_standard_basis_fixed_col_variants():
    for fixed in range(4):
        b = standard_basis(4, 2, fixed_col=fixed)
        assert span_dimension(b) == 5
    with pytest.raises(DfaError):
        standard_basis(3, 4)
    with pytest.raises(DfaError):
        standard_basis(3, 2, fixed_col=9)


def test_decompose_trivial():
    b = standard_basis(3, 2)
    d = decompose(b[0], b)
    assert d is not None
    assert d.coefficients == ((0, Fraction(1)),)


def test_decompose_matches_unit_and_residual_pattern():
    # a target supported on the first k columns decomposes with coefficient 1
    # on each matched single-unit matrix and -(m-1) on the all-fixed one
    n, k = 4, 3
    fixed = k - 1
    basis = standard_basis(n, k)
    target_map = (0, 1, 2, 0)  # rows into columns, support inside first k
    target = flatten(WordMatrix(target_map))
    d = decompose(target, basis)
    assert d is not None
    matched = [(i, j) for i, j in enumerate(target_map) if j != fixed]
    m = len(matched)
    expected = {j * n + i: Fraction(1) for i, j in matched}
    if m != 1:
        expected[len(basis) - 1] = Fraction(-(m - 1))
    assert dict(d.coefficients) == expected
    assert combine(basis, d) == target


def test_decompose_outside_span():
    b = standard_basis(3, 2)
    stray = [Fraction(0)] * 9
    stray[1] = Fraction(2)  # lone doubled unit breaks the equal-row-sum law
    assert decompose(tuple(stray), b) is None
    assert decompose([Fraction(0)] * 9, []) == Decomposition(())
    assert decompose(tuple(stray), []) is None


def test_coefficient_sum_values():
    d = cerny_automaton(4)
    _, witnesses = word_matrix_span(d)
    flats = [flatten(g) for _, g in witnesses]
    target = flatten(matrix_of_word(d, (1, 0, 0, 1)))
    dec = decompose(target, flats)
    assert coefficient_sum(dec) == 1
    assert coefficient_sum(Decomposition(())) == 0
    doubled = decompose([2 * x for x in target], flats)
    assert coefficient_sum(doubled) == 2


def test_span_solver_reuse_and_dimension():
    b = standard_basis(4, 2)
    solver = SpanSolver(b)
    assert solver.dimension == 5
    for vec in b:
        d = solver.solve(vec)
        assert d is not None and combine(b, d) == vec
    assert solver.solve((Fraction(1),) * 16) is None


def test_left_multiply_flat():
    M = WordMatrix((1, 0))
    flat = [Fraction(x) for x in (1, 2, 3, 4)]
    assert left_multiply_flat(M, flat) == (3, 4, 1, 2)
    with pytest.raises(DfaError):
        left_multiply_flat(M, flat[:3])


def test_letter_closure_on_saturated_span():
    d = cerny_automaton(3)
    _, witnesses = word_matrix_span(d)
    ok, witness = letter_closure_check(d, [g for _, g in witnesses])
    assert ok and witness is None


def test_letter_closure_failure_witness():
    d = cerny_automaton(3)
    ok, witness = letter_closure_check(d, [identity(3)])
    assert not ok
    assert witness == (0, 0)  # M_a . E falls outside span{E}
    ok2, _ = letter_closure_check(d, [])
    assert ok2


def test_word_matrix_span_witnesses_are_word_matrices():
    d = kari_automaton()
    ech, witnesses = word_matrix_span(d)
    assert ech.dimension == len(witnesses) <= d.n * (d.n - 1) + 1
    for w, g in witnesses:
        assert matrix_of_word(d, w) == g


def test_word_matrix_span_contains_long_products():
    d = cerny_automaton(3)
    ech, witnesses = word_matrix_span(d)
    long_word = (0, 1, 0, 0, 1, 1, 0, 1, 0, 0)
    assert ech.contains(flatten(matrix_of_word(d, long_word)))


def test_oracle_agreement_on_word_matrices():
    d = cerny_automaton(4)
    words = [w for L in range(4) for w in product(range(2), repeat=L)]
    flats = [flatten(matrix_of_word(d, w)) for w in words]
    ints = [int_flat(matrix_of_word(d, w).rows, 4) for w in words]
    assert span_dimension(flats) == int_rank(ints)
