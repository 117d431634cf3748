from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hilbadhm.errors import DimensionMismatch, SingularMatrixError
from hilbadhm.exactalg import (
    IncrementalSpan,
    Matrix,
    charpoly,
    commutator,
    mat_inverse,
    mat_kernel,
    mat_rank,
    solve,
    span_insert,
)

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@st.composite
def matrices(draw, max_dim=12):
    r = draw(st.integers(1, max_dim))
    c = draw(st.integers(1, max_dim))
    # many zeros so low ranks actually occur
    entry = st.one_of(st.just(Fraction(0)), rationals)
    return Matrix([[draw(entry) for _ in range(c)] for _ in range(r)])


def test_rank_examples():
    assert mat_rank(Matrix.identity(2)) == 2
    assert mat_rank(Matrix.zeros(2, 2)) == 0
    assert mat_rank(Matrix([[1, 2], [2, 4]])) == 1


def test_kernel_examples():
    assert mat_kernel(Matrix.identity(2)) == []
    (v,) = mat_kernel(Matrix([[1, -1]]))
    assert v[0] == v[1] != 0
    (w,) = mat_kernel(Matrix([[1, 2], [2, 4]]))
    assert w[0] == -2 * w[1] and w[1] != 0


def test_span_insert_examples():
    s = IncrementalSpan(2)
    s, new, _ = span_insert(s, [1, 0])
    assert new and s.rank == 1
    s, new, coords = span_insert(s, [1, 0])
    assert not new and list(coords) == [1]
    s, _, _ = span_insert(s, [0, 1])
    s, new, coords = span_insert(s, [1, 1])
    assert not new and list(coords) == [1, 1]


def test_span_insert_is_functional():
    s = IncrementalSpan(3)
    s2, _, _ = span_insert(s, [1, 2, 3])
    assert s.rank == 0 and s2.rank == 1


def test_shapes_checked():
    with pytest.raises(DimensionMismatch):
        Matrix.identity(2) @ Matrix.identity(3)
    with pytest.raises(DimensionMismatch):
        Matrix.identity(2) + Matrix.zeros(2, 3)


def test_singular_inverse():
    with pytest.raises(SingularMatrixError):
        mat_inverse(Matrix([[1, 2], [2, 4]]))


def test_charpoly_companion():
    # companion of t^3 - 2t + 5
    m = Matrix([[0, 0, -5], [1, 0, 2], [0, 1, 0]])
    assert charpoly(m) == [1, 0, -2, 5]


def test_commutator_of_elementary():
    a = Matrix([[0, 1], [0, 0]])
    b = Matrix([[0, 0], [1, 0]])
    assert commutator(a, b) == Matrix.diag([1, -1])


@given(matrices())
def test_rank_nullity(m):
    ker = mat_kernel(m)
    assert mat_rank(m) + len(ker) == m.ncols
    for v in ker:
        assert all(a == 0 for a in m.apply(v))
    if ker:
        assert mat_rank(Matrix.from_columns(ker)) == len(ker)


@given(matrices(max_dim=6))
def test_rank_of_transpose(m):
    assert mat_rank(m) == mat_rank(m.T)


@given(st.integers(1, 6).flatmap(lambda n: st.lists(st.lists(rationals, min_size=n, max_size=n), min_size=n, max_size=n)))
def test_inverse_roundtrip(rows):
    m = Matrix(rows)
    if mat_rank(m) < m.nrows:
        return
    assert m @ mat_inverse(m) == Matrix.identity(m.nrows)


@given(matrices(max_dim=6), st.data())
def test_solve_consistent_systems(a, data):
    x = Matrix.column([data.draw(rationals) for _ in range(a.ncols)])
    b = a @ x
    sol = solve(a, b)
    assert sol is not None and a @ sol == b


@given(st.lists(st.lists(rationals, min_size=4, max_size=4), min_size=1, max_size=8))
def test_span_idempotent_and_coordinates(vectors):
    s = IncrementalSpan(4)
    for v in vectors:
        s.insert(v)
    r = s.rank
    for v in vectors:
        new, coords = s.insert(v)
        assert not new
        recon = [sum((c * w[k] for c, w in zip(coords, s.accepted)), Fraction(0)) for k in range(4)]
        assert recon == [Fraction(a) for a in v]
    assert s.rank == r == mat_rank(Matrix(vectors))


@given(st.integers(1, 5).flatmap(lambda n: st.lists(st.lists(rationals, min_size=n, max_size=n), min_size=n, max_size=n)))
def test_charpoly_cayley_hamilton(rows):
    m = Matrix(rows)
    k = m.nrows
    acc = Matrix.zeros(k, k)
    for a in charpoly(m):
        acc = acc @ m + Matrix.identity(k).scale(a)
    assert acc.is_zero()
    assert charpoly(m)[1] == -m.trace()
