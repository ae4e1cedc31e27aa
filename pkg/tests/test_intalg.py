import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from flc.intalg import (
    F2Matrix,
    IntMatrix,
    det,
    integer_kernel,
    kernel_mod_lattice,
    row_lattice_basis,
    smith_normal_form,
    solve_f2,
    solve_int,
    subquotient,
)


def matrices(max_rows=4, max_cols=4, bound=9):
    return st.integers(1, max_rows).flatmap(
        lambda m: st.integers(1, max_cols).flatmap(
            lambda n: st.lists(st.lists(st.integers(-bound, bound), min_size=n, max_size=n),
                               min_size=m, max_size=m)))


def check_snf(A: IntMatrix):
    S = smith_normal_form(A)
    D = S.U @ A @ S.V
    assert D == S.D
    assert abs(det(S.U)) == 1 and abs(det(S.V)) == 1
    assert S.U @ S.U_inv == IntMatrix.identity(A.rows)
    assert S.V @ S.V_inv == IntMatrix.identity(A.cols)
    d = S.D.diagonal()
    for i in range(A.rows):
        for j in range(A.cols):
            if i != j:
                assert S.D[i, j] == 0
    nz = [x for x in d if x]
    assert all(x > 0 for x in nz)
    assert d[:len(nz)] == nz
    for a, b in zip(nz, nz[1:]):
        assert b % a == 0
    return S


def test_snf_small_example():
    S = check_snf(IntMatrix.from_rows([[2, 4], [0, 6]]))
    assert S.D.diagonal() == [2, 6]


def test_snf_zero_and_empty():
    S = check_snf(IntMatrix.zeros(2, 3))
    assert S.rank == 0
    S = smith_normal_form(IntMatrix.zeros(0, 3))
    assert S.V.rows == 3


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_snf_properties(rows):
    check_snf(IntMatrix.from_rows(rows))


@settings(max_examples=80, deadline=None)
@given(matrices(), st.data())
def test_snf_rank_matches_numpy(rows, data):
    A = IntMatrix.from_rows(rows)
    assert smith_normal_form(A).rank == np.linalg.matrix_rank(np.array(rows, dtype=float))


def test_det_bareiss():
    assert det(IntMatrix.from_rows([[2, 1], [7, 4]])) == 1
    assert det(IntMatrix.from_rows([[1, 2, 3], [4, 5, 6], [7, 8, 9]])) == 0


@settings(max_examples=80, deadline=None)
@given(matrices(), st.lists(st.integers(-5, 5), min_size=4, max_size=4))
def test_solve_int_round_trip(rows, x):
    A = IntMatrix.from_rows(rows)
    x = x[:A.cols]
    b = A.apply(x)
    y = solve_int(A, b)
    assert y is not None and A.apply(y) == b


def test_solve_int_no_solution():
    assert solve_int(IntMatrix.from_rows([[2]]), [1]) is None
    assert solve_int(IntMatrix.from_rows([[2, 4]]), [6]) is not None


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_integer_kernel_is_saturated_kernel(rows):
    A = IntMatrix.from_rows(rows)
    K = integer_kernel(A)
    assert len(K) == A.cols - smith_normal_form(A).rank
    for v in K:
        assert not any(A.apply(v))


def test_row_lattice_basis_spans_same_lattice():
    vecs = [(2, 4), (4, 2), (6, 6)]
    B = row_lattice_basis(vecs, 2)
    assert len(B) == 2
    for v in vecs:
        coeff = solve_int(IntMatrix.from_rows(B).T, v)
        assert coeff is not None
    for b in B:
        assert solve_int(IntMatrix.from_rows(vecs).T, b) is not None


def test_subquotient_cyclic():
    sq = subquotient([(1,)], [(6,)], 1)
    assert sq.torsion == (6,) and sq.free_rank == 0
    sq = subquotient([(2,), (3,)], [(12,)], 1)
    assert sq.torsion == (12,)
    sq = subquotient([(1, 0), (0, 1)], [(2, 0)], 2)
    assert sq.free_rank == 1 and sq.torsion == (2,)


def test_kernel_mod_lattice_examples():
    # swap on Z^2: kernel of (A - I) is spanned by (1, 1)
    A = IntMatrix.from_rows([[-1, 1], [1, -1]])
    assert kernel_mod_lattice(A, IntMatrix.zeros(0, 2)) == [(1, 1)]
    # x -> 2x on Z/4: kernel is 2Z/4Z
    gens = kernel_mod_lattice(IntMatrix.from_rows([[2]]), IntMatrix.from_rows([[4]]))
    assert subquotient(list(gens) + [(4,)], [(4,)], 1).torsion == (2,)


def test_solve_f2_examples():
    A = F2Matrix.from_rows([[1, 1, 0], [0, 1, 1]])
    x, kernel = solve_f2(A, [1, 0])
    assert A.apply(x) == [1, 0]
    assert len(kernel) == 1 and A.apply(kernel[0]) == [0, 0]
    assert solve_f2(F2Matrix.from_rows([[1, 1], [1, 1]]), [1, 0]) is None


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 6), st.integers(1, 6), st.data())
def test_solve_f2_against_enumeration(m, n, data):
    rows = data.draw(st.lists(st.lists(st.integers(0, 1), min_size=n, max_size=n), min_size=m, max_size=m))
    b = data.draw(st.lists(st.integers(0, 1), min_size=m, max_size=m))
    A = F2Matrix.from_rows(rows, cols=n)
    sols = [x for x in itertools.product((0, 1), repeat=n) if A.apply(x) == b]
    out = solve_f2(A, b)
    if not sols:
        assert out is None
        return
    x, kernel = out
    assert A.apply(x) == b
    assert 2 ** len(kernel) == len(sols)


def test_intmatrix_shape_errors():
    with pytest.raises(ValueError):
        IntMatrix.from_rows([[1, 2], [3]])
