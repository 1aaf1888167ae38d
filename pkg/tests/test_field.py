from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st
from sympy import GF
from sympy.polys.matrices import DomainMatrix

from gradalg.errors import InvalidParameter
from gradalg.field import (Subspace, make_field, mat_inv, nullspace, rank, rref, solve_linear)

P = 13
matrices = st.integers(1, 5).flatmap(lambda r: st.integers(1, 5).flatmap(
    lambda c: st.lists(st.lists(st.integers(0, P - 1), min_size=c, max_size=c),
                       min_size=r, max_size=r)))


def sympy_rref(rows, p):
    M = DomainMatrix.from_list(rows, GF(p))
    R, piv = M.rref()
    out = [[int(x) % p for x in row] for row in R.to_list()][:len(piv)]
    return out, list(piv)


def test_make_field_examples():
    F = make_field([2])
    assert (F.N, F.p) == (4, 13) and F.zeta_d(2) == 12
    # default is the smallest qualifying prime above 2N; 13 is also accepted
    assert make_field([2, 3]).p == 37
    F = make_field([2, 3], prime=13)
    assert (F.N, F.p) == (12, 13)
    z3 = F.zeta_d(3)
    assert z3 != 1 and pow(z3, 3, 13) == 1
    F = make_field([])
    assert F.N == 2 and F.zeta_d(2) == F.p - 1
    with pytest.raises(InvalidParameter):
        make_field([2], prime=11)


@pytest.mark.parametrize("orders", [[2], [3], [2, 3], [4, 2], [8], [5], [6, 4]])
def test_roots_have_exact_order(orders):
    F = make_field(orders)
    assert (F.p - 1) % F.N == 0
    for d in range(1, F.N + 1):
        if F.N % d:
            continue
        z = F.zeta_d(d)
        assert pow(z, d, F.p) == 1
        assert all(pow(z, k, F.p) != 1 for k in range(1, d))
    assert pow(F.zeta, F.N // 2, F.p) == F.p - 1
    assert F.root(Fraction(1, 2)) == F.p - 1


@given(matrices)
def test_rref_matches_sympy(rows):
    R, piv = rref(np.array(rows, dtype=np.int64), P)
    ref, ref_piv = sympy_rref(rows, P)
    assert list(piv) == ref_piv
    assert R.tolist() == ref


@given(matrices)
def test_nullspace(rows):
    M = np.array(rows, dtype=np.int64)
    K = nullspace(M, P)
    assert len(K) == M.shape[1] - rank(M, P)
    if len(K):
        assert not (M @ K.T % P).any()
        assert rank(K, P) == len(K)


@given(matrices)
def test_canonical_form_idempotent(rows):
    U = Subspace(rows, P)
    assert np.array_equal(U.canonical().basis, U.basis)
    assert U == Subspace(U.basis, P)


@given(st.integers(1, 5).flatmap(lambda d: st.tuples(
    st.lists(st.lists(st.integers(0, P - 1), min_size=d, max_size=d), max_size=4),
    st.lists(st.lists(st.integers(0, P - 1), min_size=d, max_size=d), max_size=4),
    st.just(d))))
def test_dimension_formula(args):
    a, b, d = args
    U, W = Subspace(a, P, d), Subspace(b, P, d)
    assert U.dim + W.dim == U.sum(W).dim + U.intersection(W).dim
    assert U.intersection(W).issubset(U) and U.issubset(U.sum(W))


def test_subspace_examples():
    assert Subspace([[1, 0], [0, 1]], P) == Subspace([[1, 1], [1, P - 1]], P)
    assert Subspace([[1, 0]], P).intersection(Subspace([[0, 1]], P)).dim == 0
    assert Subspace([[1, 1]], P).contains([[2, 2]])
    with pytest.raises(InvalidParameter):
        Subspace([[1, 0]], P).sum(Subspace([[1, 0, 0]], P))


def test_solve_linear_examples():
    I = np.eye(3, dtype=np.int64)
    s = solve_linear(I, [1, 2, 3], P)
    assert s.feasible and list(s.particular) == [1, 2, 3] and s.dimension == 0
    s = solve_linear(np.zeros((2, 2), dtype=np.int64), [1, 0], P)
    assert not s.feasible
    s = solve_linear(np.array([[1, 2], [2, 4]]), [3, 6], P)
    assert s.feasible and s.dimension == 1
    x = np.asarray(s.particular)
    assert list(np.array([[1, 2], [2, 4]]) @ x % P) == [3, 6]


@given(st.lists(st.lists(st.integers(0, P - 1), min_size=3, max_size=3), min_size=3, max_size=3))
def test_mat_inv(rows):
    M = np.array(rows, dtype=np.int64)
    if rank(M, P) < 3:
        with pytest.raises(ZeroDivisionError):
            mat_inv(M, P)
    else:
        assert np.array_equal(M @ mat_inv(M, P) % P, np.eye(3, dtype=np.int64))
