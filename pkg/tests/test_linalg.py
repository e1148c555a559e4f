from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from adamsbar.linalg import (
    ClassProjector,
    SparseMatrix,
    echelon_basis,
    image_basis,
    kernel_basis,
    quotient_basis,
    quotient_reps,
    rank,
    solve,
)

F = Fraction


def dense(vec, n):
    return [vec.get(i, F(0)) for i in range(n)]


def mat(rows):
    m = SparseMatrix(len(rows), len(rows[0]) if rows else 0)
    for i, r in enumerate(rows):
        for j, x in enumerate(r):
            if x:
                m.entries[(i, j)] = F(x)
    return m


def test_kernel_identity():
    assert kernel_basis(mat([[1, 0], [0, 1]])) == []


def test_kernel_zero_map():
    ker = kernel_basis(mat([[0, 0]]))
    assert len(ker) == 2


def test_kernel_rank_one():
    ker = kernel_basis(mat([[1, 1], [1, 1]]))
    assert len(ker) == 1
    v = ker[0]
    # proportional to (1, -1)
    assert v[0] * F(-1) == v[1] * F(1)


def test_solve_identity():
    assert solve(mat([[1]]), {0: F(3)}) == {0: F(3)}


def test_solve_scaling():
    assert solve(mat([[2]]), {0: F(4)}) == {0: F(2)}


def test_solve_unsolvable():
    assert solve(mat([[1, 0], [0, 0]]), {1: F(1)}) is None


def test_quotient_reps_trivial_sub():
    reps = quotient_reps([], 2)
    assert reps == [{0: F(1)}, {1: F(1)}]


def test_quotient_reps_standard():
    assert quotient_reps([{0: F(1)}], 2) == [{1: F(1)}]


def test_quotient_reps_echelon_pivot():
    assert quotient_reps([{0: F(1), 1: F(1)}], 2) == [{1: F(1)}]


def test_quotient_reps_dependent_raises():
    with pytest.raises(ValueError):
        quotient_reps([{0: F(1)}, {0: F(2)}], 2)


def test_quotient_basis():
    sub = [{0: F(1), 1: F(1)}]
    vecs = [{0: F(1)}, {1: F(1)}]
    reps = quotient_basis(sub, vecs)
    assert reps == [{0: F(1)}]


small = st.integers(min_value=-5, max_value=5)


@st.composite
def matrices(draw):
    r = draw(st.integers(1, 4))
    c = draw(st.integers(1, 4))
    rows = draw(
        st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r)
    )
    return mat(rows)


@given(matrices())
def test_rank_nullity(m):
    assert rank(m) + len(kernel_basis(m)) == m.cols


@given(matrices(), st.lists(small, min_size=4, max_size=4))
def test_solve_consistency(m, xs):
    x = {i: F(v) for i, v in enumerate(xs[: m.cols]) if v}
    b = m.apply(x)
    sol = solve(m, b)
    assert sol is not None
    assert m.apply(sol) == b


@given(matrices())
def test_kernel_vectors_in_kernel(m):
    for v in kernel_basis(m):
        assert m.apply(v) == {}


@given(matrices())
def test_quotient_reps_complete_basis(m):
    sub = image_basis(m)
    reps = quotient_reps(sub, m.rows)
    full = echelon_basis(sub + reps)
    assert len(full) == m.rows


def test_class_projector():
    # space Q^3, classes spanned by e0 mod span{e1}
    proj = ClassProjector([{0: F(1)}], [{1: F(1)}], 3)
    assert proj.class_coords({0: F(2), 1: F(5)}) == {0: F(2)}
    assert proj.class_coords({2: F(1)}, strict=False) is None
    with pytest.raises(ValueError):
        proj.class_coords({2: F(1)})
