from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from crossed_double.errors import SingularMatrix
from crossed_double.exact_linalg import (
    GF, QQ, Matrix, change_basis_canonical, compose, dual_basis_pair, flip, identity_cols, invert_cols,
    invert_matrix, lin_apply, parse_field_flag, permute_legs, solve, tensor_apply, tensor_of, tensor_to_vec,
    vec_to_tensor,
)

small = st.fractions(min_value=-5, max_value=5, max_denominator=4)


def square(n):
    return st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n)


@given(st.integers(1, 4).flatmap(square))
def test_inverse_or_singular(rows):
    m = Matrix.from_rows(rows, QQ)
    try:
        inv = invert_matrix(m)
    except SingularMatrix:
        assert m.rank() < m.rows
        return
    assert m @ inv == Matrix.identity(m.rows, QQ)
    assert inv @ m == Matrix.identity(m.rows, QQ)


@given(st.integers(1, 4).flatmap(square), st.data())
def test_solve_consistent_system(rows, data):
    m = Matrix.from_rows(rows, QQ)
    x = data.draw(st.lists(small, min_size=m.cols, max_size=m.cols))
    b = [sum((r[j] * x[j] for j in range(m.cols)), Fraction(0)) for r in rows]
    y = solve(m, b)
    assert y is not None
    assert [sum((r[j] * y[j] for j in range(m.cols)), Fraction(0)) for r in rows] == b


def test_inconsistent_system():
    assert solve(Matrix.from_rows([[1, 1], [2, 2]], QQ), [1, 3]) is None


def test_prime_field_arithmetic():
    F = GF(7)
    assert F.inv(3) * F(3) == 1
    assert F(Fraction(1, 2)) == 4
    with pytest.raises(ZeroDivisionError):
        F(Fraction(1, 7))
    assert parse_field_flag("GF7") == F
    assert parse_field_flag("Q") == QQ


def test_rationals_normalise_integral_fractions():
    assert type(QQ(Fraction(4, 2))) is int
    assert QQ.dump(Fraction(-3, 6)) == "-1/2"
    with pytest.raises(TypeError):
        QQ(0.5)


@given(st.permutations(range(3)), st.permutations(range(3)))
def test_permute_legs_is_contravariant(p, q):
    t = tensor_of({0: 1, 1: 2}, {0: 3, 2: -1}, {1: 1})
    composed = tuple(p[i] for i in q)
    assert permute_legs(permute_legs(t, p), q) == permute_legs(t, composed)


def test_flip_is_involutive():
    t = tensor_of({0: 1, 1: 2}, {2: 5})
    assert flip(flip(t)) == t


@given(st.lists(st.integers(1, 3), min_size=1, max_size=3), st.data())
def test_tensor_vec_round_trip(dims, data):
    keys = st.tuples(*[st.integers(0, d - 1) for d in dims])
    t = data.draw(st.dictionaries(keys, st.integers(1, 5), max_size=6))
    assert vec_to_tensor(tensor_to_vec(t, dims), dims) == t


@given(st.integers(1, 3).flatmap(square))
def test_canonical_element_is_basis_independent(rows):
    m = Matrix.from_rows(rows, QQ)
    if m.rank() < m.rows:
        return
    pair = dual_basis_pair(m.rows)
    assert change_basis_canonical(pair, m) == pair.element


def test_linear_maps_compose():
    f = ({0: 1, 1: 1}, {1: 2})
    g = invert_cols(f, 2, QQ)
    assert compose(f, g) == identity_cols(2)
    assert lin_apply(f, {0: 1, 1: 1}) == {0: 1, 1: 3}
    assert tensor_apply([f, None], {(0, 1): 1}) == {(0, 1): 1, (1, 1): 1}
