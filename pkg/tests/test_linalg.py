from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from dycoh.linalg import GF, QQ, Field, Matrix, kernel_basis, kron, rank, rref, solve

FIELDS = [QQ, GF(2), GF(3), GF(7)]


def test_rref_identity_is_fixed():
    m = Matrix.identity(QQ, 3)
    r, rk, piv = rref(m)
    assert r == m and rk == 3 and piv == [0, 1, 2]


def test_rref_of_zero_matrix():
    r, rk, piv = rref(Matrix.zeros(QQ, 2, 4))
    assert rk == 0 and piv == [] and r.shape == (2, 4)


def test_rank_one_over_q():
    m = Matrix(QQ, [[1, 2], [2, 4]])
    r, rk, piv = rref(m)
    assert rk == 1
    assert r.tolist() == [[1, 2], [0, 0]]


def test_rref_with_fractions():
    r, rk, _ = rref(Matrix(QQ, [[2, 1], [1, "1/2"]]))
    assert rk == 1
    assert r.tolist()[0] == [1, Fraction(1, 2)]


def test_rank_depends_on_characteristic():
    data = [[1, 1], [1, -1]]
    assert rank(Matrix(QQ, data)) == 2
    assert rank(Matrix(GF(2), data)) == 1
    assert rank(Matrix(GF(3), data)) == 2


def test_solve_inconsistent_returns_none():
    assert solve(Matrix(QQ, [[1, 1], [2, 2]]), [1, 3]) is None


def test_solve_over_f5():
    a = Matrix(GF(5), [[2, 0], [0, 3]])
    x = solve(a, [1, 1])
    assert x.tolist() == [[3], [2]]


def test_floats_rejected():
    with pytest.raises(TypeError):
        QQ.array([0.5])


def test_field_validation():
    with pytest.raises(ValueError):
        Field(4)
    assert str(GF(3)) == "GF(3)" and str(QQ) == "QQ"


def test_parse_and_to_json_round_trip():
    assert QQ.parse("-3/6") == Fraction(-1, 2)
    assert QQ.to_json(Fraction(-1, 2)) == "-1/2"
    assert GF(7).parse("1/2") == 4
    with pytest.raises(ValueError):
        QQ.parse("0.5")
    with pytest.raises(ValueError):
        QQ.parse(True)


def test_kron_layout():
    a = Matrix(QQ, [[1, 2]])
    b = Matrix(QQ, [[0, 1], [1, 0]])
    assert kron(a, b).tolist() == [[0, 1, 0, 2], [1, 0, 2, 0]]


def test_small_int_picks_narrow_dtype():
    assert GF(3).small_int(np.array([1, 2])).dtype == np.int8
    assert QQ.small_int(np.array([1, 300], dtype=object)).dtype == np.int16
    assert QQ.small_int(np.array([Fraction(1, 2)], dtype=object)) is None
    assert QQ.small_int(np.array([2**62], dtype=object)) is None


# -- properties ---------------------------------------------------------------

fields = st.sampled_from(FIELDS)


@st.composite
def matrices(draw, max_side=5):
    fld = draw(fields)
    r = draw(st.integers(1, max_side))
    c = draw(st.integers(1, max_side))
    vals = draw(st.lists(st.integers(-4, 4), min_size=r * c, max_size=r * c))
    return Matrix(fld, np.array(vals, dtype=object).reshape(r, c))


@given(matrices())
def test_rank_nullity(m):
    k = kernel_basis(m)
    assert rank(m) + k.cols == m.cols
    assert (m @ k).is_zero() if k.cols else True


@given(matrices())
def test_rref_is_idempotent_and_rank_preserving(m):
    r, rk, piv = rref(m)
    r2, rk2, piv2 = rref(r)
    assert r2 == r and rk2 == rk == rank(m) and piv2 == piv
    for i, c in enumerate(piv):
        col = [r[j, c] for j in range(r.rows)]
        assert col == [1 if j == i else 0 for j in range(r.rows)]


@given(matrices(), st.data())
def test_solve_recovers_consistent_rhs(m, data):
    x = data.draw(st.lists(st.integers(-3, 3), min_size=m.cols, max_size=m.cols))
    b = m @ Matrix.column(m.field, x)
    sol = solve(m, b)
    assert sol is not None
    assert m @ sol == b


@given(matrices(), st.integers(-5, 5))
def test_scalar_distributes(m, c):
    assert (m + m) * c == m * c + m * c
    assert m - m == Matrix.zeros(m.field, *m.shape)


@given(st.lists(st.integers(-10**6, 10**6), min_size=1, max_size=20), st.integers(1, 1000))
def test_small_int_bound_is_safe(vals, factor):
    a = np.array(vals, dtype=object)
    s = QQ.small_int(a, factor)
    assert s is not None
    assert s.tolist() == vals
    assert max(abs(v) for v in vals) * factor < np.iinfo(s.dtype).max
