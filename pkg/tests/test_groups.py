from fractions import Fraction
import itertools

import pytest
import sympy
from hypothesis import given, strategies as st
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from gradalg.errors import InvalidBicharacter, InvalidParameter, NoCharacter
from gradalg.groups import (Bicharacter, Subgroup, all_subgroups, alternating_bicharacters,
                            coset_table, make_group, quotient, smith_normal_form,
                            solve_character, subgroup_from_generators, symplectic_basis,
                            trivial_subgroup, validate_bicharacter)
from gradalg.census import groups_up_to

moduli = st.lists(st.integers(2, 6), min_size=0, max_size=3)
# all_subgroups is exhaustive, so keep these groups small
small_moduli = st.lists(st.integers(2, 4), min_size=0, max_size=3).filter(
    lambda ms: sum(ms) <= 8)


def standard_beta(T, ell=2):
    # beta((a,b),(c,d)) = zeta_ell^(ad - bc)
    return Bicharacter(T, [(1, 0), (0, 1)],
                       [[0, Fraction(1, ell)], [Fraction(-1, ell), 0]])


def test_make_group_examples():
    G = make_group([2, 2])
    assert G.order == 4 and G.exponent == 2
    E = make_group([])
    assert E.order == 1 and E.elements == ((),)
    Z4 = make_group([4])
    assert Z4.inverse((3,)) == (1,)
    with pytest.raises(InvalidParameter):
        make_group([2, 1])


def test_invariant_factors_normalize():
    assert make_group([2, 3]).invariant_factors == (6,)
    assert make_group([4, 2]).invariant_factors == (2, 4)
    assert make_group([6, 4]).invariant_factors == (2, 12)


@given(st.lists(st.lists(st.integers(-6, 6), min_size=3, max_size=3), min_size=1, max_size=3))
def test_smith_normal_form_matches_sympy(rows):
    d = smith_normal_form(rows)[0]
    ref = sympy_snf(sympy.Matrix(rows), domain=sympy.ZZ)
    ref_diag = [abs(int(ref[i, i])) for i in range(min(ref.shape))]
    assert sorted(x for x in d if x) == sorted(x for x in ref_diag if x)


@given(moduli)
def test_group_axioms(ms):
    G = make_group(ms)
    els = G.elements
    e = G.identity
    for x in els:
        assert G.add(x, e) == x
        assert G.add(x, G.inverse(x)) == e
    for x, y, z in itertools.islice(itertools.product(els, repeat=3), 2000):
        assert G.add(G.add(x, y), z) == G.add(x, G.add(y, z))
        assert G.add(x, y) == G.add(y, x)


def test_subgroup_from_generators():
    G = make_group([2, 2])
    assert subgroup_from_generators(G, [(1, 0), (0, 1)]).order == 4
    Z4 = make_group([4])
    assert subgroup_from_generators(Z4, [(2,)]).elements == ((0,), (2,))
    Z2 = make_group([2])
    assert subgroup_from_generators(Z2, []).elements == ((0,),)


def test_quotient_examples():
    G = make_group([2, 2])
    Q, pi = quotient(G, subgroup_from_generators(G, [(0, 1)]))
    assert Q.order == 2 and pi((1, 0)) != Q.identity
    Z4 = make_group([4])
    Q, pi = quotient(Z4, subgroup_from_generators(Z4, [(2,)]))
    assert Q.order == 2
    Q, pi = quotient(G, Subgroup(G, G.elements))
    assert Q.order == 1


@given(small_moduli, st.data())
def test_quotient_is_homomorphism(ms, data):
    G = make_group(ms)
    subs = all_subgroups(G)
    N = data.draw(st.sampled_from(subs))
    Q, pi = quotient(G, N)
    assert Q.order * N.order == G.order
    for x in G.elements:
        for y in G.elements[:6]:
            assert pi(G.add(x, y)) == Q.add(pi(x), pi(y))
    assert {x for x in G.elements if pi(x) == Q.identity} == set(N.elements)


def test_coset_table_examples():
    Z2 = make_group([2])
    tab = coset_table(Z2, trivial_subgroup(Z2))
    assert tab.cosets == (((0,),), ((1,),)) and tab.gamma == ((0,), (1,))
    G = make_group([2, 2])
    tab = coset_table(G, Subgroup(G, G.elements))
    assert len(tab.cosets) == 1 and tab.gamma == ((0, 0),)
    Z4 = make_group([4])
    tab = coset_table(Z4, subgroup_from_generators(Z4, [(2,)]), (1,))
    assert tab.cosets == (((0,), (2,)), ((1,), (3,)))
    assert tab.partner == (1, 0)
    assert tab.gamma == ((0,), (3,))


@given(small_moduli, st.data())
def test_coset_table_partition_and_pairing(ms, data):
    G = make_group(ms)
    T = data.draw(st.sampled_from(all_subgroups(G)))
    g0 = data.draw(st.sampled_from(G.elements))
    tab = coset_table(G, T, g0)
    members = [x for A in tab.cosets for x in A]
    assert sorted(members) == list(G.elements)
    assert len(tab.cosets) * T.order == G.order
    for a, b in enumerate(tab.partner):
        if a != b:
            total = G.add(G.add(g0, tab.gamma[a]), tab.gamma[b])
            assert total == G.identity


def test_solve_character_examples():
    Z2 = make_group([2])
    assert solve_character(Z2, [((1,), Fraction(1, 2))]).exponents == (1,)
    G = make_group([2, 2])
    assert solve_character(G, [((1, 1), Fraction(1, 2))]).exponents == (1, 0)
    Z4 = make_group([4])
    with pytest.raises(NoCharacter):
        solve_character(Z4, [((2,), Fraction(0)), ((2,), Fraction(1, 2))])


@given(moduli, st.data())
def test_solve_character_meets_constraints(ms, data):
    G = make_group(ms)
    # constraints taken from an actual character are always consistent
    exps = [data.draw(st.integers(0, m - 1)) for m in G.moduli]
    pts = data.draw(st.lists(st.sampled_from(G.elements), max_size=3))
    val = lambda x: Fraction(sum(Fraction(a * e, m) for a, e, m in zip(x, exps, G.moduli))) % 1
    chi = solve_character(G, [(x, val(x)) for x in pts])
    for x in pts:
        assert chi(x) == val(x)
    assert all(chi.power(G.exponent)(x) == 0 for x in G.elements)


def test_validate_bicharacter_examples():
    G = make_group([2, 2])
    T = Subgroup(G, G.elements)
    beta = validate_bicharacter(T, standard_beta(T))
    assert beta.verified
    for (a, b), (c, d) in itertools.product(T.elements, repeat=2):
        assert beta((a, b), (c, d)) == Fraction((a * d - b * c) % 2, 2)
    with pytest.raises(InvalidBicharacter):
        validate_bicharacter(T, Bicharacter(T, [(1, 0), (0, 1)], [[0, 0], [0, 0]]))
    G3 = make_group([3, 3])
    T3 = Subgroup(G3, G3.elements)
    beta3 = validate_bicharacter(T3, standard_beta(T3, 3))
    assert beta3((1, 0), (0, 1)) == Fraction(1, 3)
    assert beta3.inverse()((1, 0), (0, 1)) == Fraction(2, 3)


def test_symplectic_basis_examples():
    G = make_group([2, 2])
    T = Subgroup(G, G.elements)
    B = symplectic_basis(T, standard_beta(T))
    assert B.pairs == (((1, 0), (0, 1)),)
    Z2 = make_group([2])
    assert symplectic_basis(trivial_subgroup(Z2), Bicharacter(trivial_subgroup(Z2), [], [])).pairs == ()
    G4 = make_group([2, 2, 2, 2])
    T4 = Subgroup(G4, G4.elements)
    h = Fraction(1, 2)
    beta = Bicharacter(T4, [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)],
                       [[0, h, 0, 0], [h, 0, 0, 0], [0, 0, 0, h], [0, 0, h, 0]])
    B4 = symplectic_basis(T4, beta)
    assert len(B4.pairs) == 2
    (u1, v1), (u2, v2) = B4.pairs
    for x, y in [(u1, u2), (u1, v2), (v1, u2), (v1, v2)]:
        assert beta(x, y) == 0


def test_symplectic_basis_properties_small_groups():
    for G in groups_up_to(16):
        for T in all_subgroups(G):
            if T.sqrt_order is None:
                continue
            for beta in alternating_bicharacters(T):
                B = symplectic_basis(T, beta)
                for (u, v), l in zip(B.pairs, B.orders):
                    assert beta(u, v) == Fraction(1, l)
                for (i, (u, v)), (j, (x, y)) in itertools.combinations(enumerate(B.pairs), 2):
                    assert beta(u, x) == beta(u, y) == beta(v, x) == beta(v, y) == 0
                assert sorted(B.coordinates) == list(T.elements)
                assert B.ell ** 2 == T.order
