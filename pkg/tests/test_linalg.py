import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from opw.field import Modulus
from opw.linalg import (
    SingularMatrixError,
    Status,
    affine_solution_space,
    dot_product,
    mat_determinant,
    mat_inverse,
    mat_solve,
    mat_vec,
)

from .oracles import det_leibniz, inverse_adjugate, matvec

Q7 = Modulus(7)
Q13 = Modulus(13)
Q10007 = Modulus(10007)


def test_determinant_examples():
    for d in (1, 2, 5):
        eye = [[int(i == j) for j in range(d)] for i in range(d)]
        assert mat_determinant(eye, Q7) == Q7(1)
    assert mat_determinant([[1, 2], [3, 4]], Q7) == Q7(5)
    assert det_leibniz([[1, 2], [3, 4]], 7) == 5
    assert mat_determinant([[1, 2, 3], [4, 5, 6], [1, 2, 3]], Q7) == Q7(0)


def test_solve_examples():
    assert mat_solve([[1, 0], [0, 1]], [3, 1], Q7) == (3, 1)
    x = mat_solve([[1, 2], [3, 4]], [1, 1], Q7)
    assert x == (6, 1)
    assert matvec([[1, 2], [3, 4]], list(x), 7) == [1, 1]
    with pytest.raises(SingularMatrixError):
        mat_solve([[1, 1], [1, 1]], [1, 2], Q7)


def test_solve_shape_errors():
    with pytest.raises(ValueError):
        mat_solve([[1, 2], [3, 4]], [1], Q7)
    with pytest.raises(ValueError):
        mat_determinant([[1, 2]], Q7)


def test_solve_needs_row_swap():
    assert mat_solve([[0, 1], [1, 0]], [2, 3], Q7) == (3, 2)
    assert mat_determinant([[0, 1], [1, 0]], Q7) == Q7(6)


def test_dot_product_examples():
    assert dot_product((1, 0, 0), (5, 6, 2), Q7) == 5
    assert dot_product((1, 1, 1), (2, 2, 2), Q7) == 6
    assert dot_product((0, 0, 0), (3, 4, 5), Q7) == 0
    with pytest.raises(ValueError):
        dot_product((1, 2), (1, 2, 3), Q7)


def test_affine_examples():
    one = affine_solution_space([((1, 1, 1), 1)], 3, Q7)
    assert (one.rank, one.solution_dim, one.status) == (1, 2, Status.UNDERDETERMINED)

    diag = affine_solution_space([((1, 0, 0), 1), ((0, 1, 0), 2), ((0, 0, 1), 3)], 3, Q7)
    assert diag.status is Status.UNIQUE
    assert diag.point == (1, 2, 3)
    assert diag.solution_dim == 0

    bad = affine_solution_space([((1, 0, 0), 1), ((1, 0, 0), 2)], 3, Q7)
    assert bad.status is Status.INFEASIBLE
    assert bad.rank == 1
    assert bad.point is None


def test_affine_rejects_wrong_dims():
    with pytest.raises(ValueError):
        affine_solution_space([((1, 1), 1)], 3, Q7)
    with pytest.raises(ValueError):
        affine_solution_space([], 3, Q7)


def test_affine_redundant_rows_are_feasible():
    space = affine_solution_space([((1, 2, 3), 4), ((2, 4, 6), 1)], 3, Q7)
    assert space.rank == 1
    assert space.status is Status.UNDERDETERMINED


def _random_matrix(r: random.Random, n: int, q: int) -> list[list[int]]:
    return [[r.randrange(q) for _ in range(n)] for _ in range(n)]


@pytest.mark.parametrize("q", [7, 13])
def test_against_adjugate_oracle(q):
    m = Modulus(q)
    r = random.Random(q)
    singular = 0
    for _ in range(300):
        n = r.randint(1, 4)
        a = _random_matrix(r, n, q)
        assert mat_determinant(a, m).value == det_leibniz(a, q)
        try:
            want = inverse_adjugate(a, q)
        except ValueError:
            singular += 1
            with pytest.raises(SingularMatrixError):
                mat_inverse(a, m)
            continue
        assert [list(row) for row in mat_inverse(a, m)] == want
    assert singular > 0


@st.composite
def systems(draw):
    q = draw(st.sampled_from([7, 13, 10007, 2**61 - 1]))
    n = draw(st.integers(1, 6))
    a = draw(st.lists(st.lists(st.integers(0, q - 1), min_size=n, max_size=n), min_size=n, max_size=n))
    b = draw(st.lists(st.integers(0, q - 1), min_size=n, max_size=n))
    return Modulus(q), a, b


@given(systems())
@settings(max_examples=300)
def test_solve_substitutes_back(sys_):
    m, a, b = sys_
    det = mat_determinant(a, m)
    if det:
        x = mat_solve(a, b, m)
        assert mat_vec(a, x, m) == tuple(b)
    else:
        with pytest.raises(SingularMatrixError):
            mat_solve(a, b, m)


def test_determinant_zero_iff_solve_fails_small():
    r = random.Random(5)
    for _ in range(500):
        n = r.randint(1, 3)
        a = _random_matrix(r, n, 7)
        solvable = True
        for rhs in ([1] * n, [r.randrange(7) for _ in range(n)]):
            try:
                mat_solve(a, rhs, Q7)
            except SingularMatrixError:
                solvable = False
        assert bool(mat_determinant(a, Q7)) == solvable


@given(st.integers(2, 6), st.data())
@settings(max_examples=100)
def test_affine_dimension_through_common_point(d, data):
    q = 10007
    seed = data.draw(st.integers(0, 2**32))
    r = random.Random(seed)
    point = [r.randrange(q) for _ in range(d)]
    k = data.draw(st.integers(1, d))
    while True:
        alphas = [[r.randrange(q) for _ in range(d)] for _ in range(k)]
        # keep only independent draws; dependent ones have probability ~ k/q
        if affine_solution_space([(a, 0) for a in alphas], d, Q10007).rank == k:
            break
    rows = [(a, dot_product(a, point, Q10007)) for a in alphas]
    space = affine_solution_space(rows, d, Q10007)
    assert space.solution_dim == d - k
    assert len(space.nullspace) == d - k
    for a, c in rows:
        assert dot_product(a, space.particular, Q10007) == c
        for v in space.nullspace:
            assert dot_product(a, v, Q10007) == 0
    # the common point is particular + some combination of the basis
    if k == d:
        assert space.point == tuple(point)
    else:
        diff = [(p - s) % q for p, s in zip(point, space.particular)]
        combo = affine_solution_space(
            [([v[i] for v in space.nullspace], diff[i]) for i in range(d)], d - k, Q10007
        )
        assert combo.status is Status.UNIQUE
