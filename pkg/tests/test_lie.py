import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from gradalg.census import division_data, groups_up_to, kappa_vectors, type2_parameters
from gradalg.errors import InvalidParameter, NoInvolution
from gradalg.field import Subspace, field_for_group
from gradalg.graded import verify_grading
from gradalg.groups import Subgroup, alternating_bicharacters, make_group, trivial_bicharacter
from gradalg.lie import (build_AI, build_AII, build_B, build_C, expected_dimension,
                         type2_context, verify_lie)


def all_matrices(L):
    return np.concatenate([L.graded_basis(g) for g in L.support])


def generated(gens, n, p):
    """Non-unital associative algebra generated by ``gens``."""
    flat = gens.reshape(len(gens), -1)
    span = Subspace(flat, p, n * n)
    while True:
        B = span.basis.reshape(-1, n, n)
        new = span.span(np.matmul(B[:, None], gens[None, :]).reshape(-1, n * n) % p)
        if new.dim == span.dim:
            return span
        span = new


def type2_z2(m, mu0):
    G = make_group([2])
    ctx = type2_context(G, Subgroup(G, G.elements), (1,))
    F = field_for_group(G)
    return build_AII(G, ctx.H, (1,), trivial_bicharacter(ctx.Tbar), (m,),
                     mu0 % F.p, ctx.Gbar.identity, F)


def test_expected_dimensions():
    assert [expected_dimension(f, 4) for f in ("A-I", "A-II", "B", "C")] == [15, 15, 6, 10]


def test_sl2_elementary(z2):
    G, T, b, F = z2
    L = build_AI(G, T, b, (1, 1), F)
    assert L.dims == {(0,): 1, (1,): 2}
    E = L.graded_basis((0,))
    assert E.tolist() == [[[1, 0], [0, F.p - 1]]] or E.tolist() == [[[F.p - 1, 0], [0, 1]]]
    assert verify_lie(L).ok
    with pytest.raises(InvalidParameter):
        build_AI(G, T, b, (1, 0), F)


def test_sl2_pauli(klein):
    G, T = klein
    L = build_AI(G, T, alternating_bicharacters(T)[0], (1,))
    assert L.dims == {(0, 1): 1, (1, 0): 1, (1, 1): 1}
    assert verify_lie(L).ok


def test_symplectic_and_orthogonal_small(z2):
    G, T, b, F = z2
    C = build_C(G, T, b, (1, 1), (1,), F)
    assert C.dims == {(0,): 1, (1,): 2}
    B = build_B(G, T, b, (1, 1), (0,), F)
    assert B.dims == {(1,): 1}
    assert verify_lie(B).ok and verify_lie(C).ok
    with pytest.raises(NoInvolution):
        build_C(G, T, b, (1, 0), (0,), F)
    with pytest.raises(NoInvolution):
        build_B(G, T, b, (2, 1), (1,), F)


@pytest.mark.parametrize("m", [2, 3, 4, 5])
def test_type2_benchmark_plus(m):
    L = type2_z2(m, 1)
    assert L.dims == {(0,): m * (m - 1) // 2, (1,): m * (m + 1) // 2 - 1}
    # L_e consists of skew matrices, L_h of symmetric ones
    p = L.p
    for X in L.graded_basis((0,)):
        assert np.array_equal(X.T % p, -X % p)
    for X in L.graded_basis((1,)):
        assert np.array_equal(X.T, X) and np.trace(X) % p == 0
    assert verify_lie(L).ok


@pytest.mark.parametrize("m", [2, 4])
def test_type2_benchmark_minus(m):
    L = type2_z2(m, -1)
    want = {(0,): m * (m + 1) // 2, (1,): m * (m - 1) // 2 - 1}
    assert L.dims == {g: d for g, d in want.items() if d}
    assert verify_lie(L).ok


def test_type2_associative_failure_witness():
    L = type2_z2(2, 1)
    rep = verify_lie(L)
    assert rep.refinement_proper and rep.associative_violations > 0
    assoc = verify_grading(L.refined_decomposition(), "assoc")
    assert ((1,), (1,)) in {(v.g, v.h) for v in assoc.violations}
    assert verify_grading(L.refined_decomposition(), "lie").ok


def test_type2_models_do_not_depend_on_chi():
    # every chi with chi(h) = -1 gives the same multiset of dimension profiles
    from collections import Counter
    from fractions import Fraction
    from itertools import product
    from gradalg.errors import RejectedParameters
    from gradalg.groups import Character

    checked = 0
    for G in groups_up_to(8):
        F = field_for_group(G)
        profiles = {}
        for exps in product(*(range(m) for m in G.moduli)):
            chi = Character(G, exps)
            for H, h, beta, k, mu0, g0 in type2_parameters(G, F, 4, chi=chi):
                try:
                    L = build_AII(G, H, h, beta, k, mu0, g0, F, chi=chi)
                except RejectedParameters:
                    continue
                per_h = profiles.setdefault((H, h), {}).setdefault(exps, Counter())
                per_h[tuple(L.dims.items())] += 1
        for per_chi in profiles.values():
            counts = list(per_chi.values())
            assert len(counts) >= 2 or G.order == 2
            assert all(c == counts[0] for c in counts)
            checked += 1
    assert checked >= 20


def test_type2_rejects_chi_with_wrong_value_at_h():
    from gradalg.groups import Character
    G = make_group([4])
    H = Subgroup(G, [(0,), (2,)])
    with pytest.raises(InvalidParameter):
        type2_context(G, H, (2,), Character(G, (0,)))


def sampled_algebras(max_order, max_n):
    for G in groups_up_to(max_order):
        F = field_for_group(G)
        for T, beta in division_data(G):
            from gradalg.groups import coset_table
            parts = G.order // T.order
            for vals in kappa_vectors(parts, max_n // T.sqrt_order):
                if sum(vals) * T.sqrt_order < 2:
                    continue
                yield "A-I", build_AI(G, T, beta, vals, F)
                if not T.is_elementary_2:
                    continue
                for g0 in G.elements:
                    for fam, build in (("B", build_B), ("C", build_C)):
                        try:
                            yield fam, build(G, T, beta, vals, g0, F)
                        except NoInvolution:
                            pass
        for H, h, beta, k, mu0, g0 in type2_parameters(G, F, max_n):
            try:
                yield "A-II", build_AII(G, H, h, beta, k, mu0, g0, F)
            except Exception:
                pass


def test_dense_properties_small_sweep():
    seen = set()
    for fam, L in sampled_algebras(4, 4):
        seen.add(fam)
        p, n = L.p, L.n
        mats = all_matrices(L)
        assert len(mats) == expected_dimension(fam, n)
        assert not (np.trace(mats, axis1=1, axis2=2) % p).any()
        if fam in ("A-I", "B", "C"):
            # homogeneous of the declared degree in the ambient grading
            dec = L.ambient.decomposition()
            for g in L.support:
                assert dec.component(g).contains(L.graded_basis(g).reshape(-1, n * n))
        if fam in ("B", "C"):
            assert np.array_equal(L.involution.phi(mats), (-mats) % p)
        if fam in ("A-I", "A-II"):
            assert generated(mats, n, p).dim == n * n
        # dense bracket closure on all basis pairs
        dec = L.decomposition()
        for g in L.support:
            A = L.graded_basis(g)
            for h in L.support:
                B = L.graded_basis(h)
                br = (np.matmul(A[:, None], B[None, :]) - np.matmul(B[None, :], A[:, None])) % p
                target = dec.component(L.group.add(g, h))
                assert target.contains(br.reshape(-1, n * n))
    assert seen == {"A-I", "A-II", "B", "C"}
