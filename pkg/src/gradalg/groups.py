"""Finite abelian groups as residue vectors.

Elements are tuples ``(a_1, ..., a_r)`` with ``0 <= a_i < m_i`` and the
group law is written additively.  All tie-breaking (transversals, canonical
characters, symplectic pairs) follows the lexicographic order of these
tuples, which is also the order of :attr:`FinAbGroup.elements`.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

import numpy as np

from .errors import InvalidBicharacter, InvalidParameter, NoCharacter

Element = tuple

__all__ = [
    "FinAbGroup",
    "Subgroup",
    "Projection",
    "CosetTable",
    "Character",
    "Bicharacter",
    "SymplecticBasis",
    "make_group",
    "subgroup_from_generators",
    "quotient",
    "coset_table",
    "solve_character",
    "validate_bicharacter",
    "symplectic_basis",
    "smith_normal_form",
    "all_subgroups",
    "alternating_bicharacters",
]


def _frac(q) -> Fraction:
    """Reduce a rational exponent into [0, 1)."""
    q = Fraction(q)
    return q - math.floor(q)


# ---------------------------------------------------------------------------
# Smith normal form
# ---------------------------------------------------------------------------

def smith_normal_form(A: Sequence[Sequence[int]]):
    """Return ``(d, U, V, Vinv)`` with ``U @ A @ V`` diagonal.

    ``d`` lists the diagonal entries (length ``min(rows, cols)``), ``U`` and
    ``V`` are unimodular and ``Vinv`` is the inverse of ``V``.  Each entry of
    ``d`` divides the next one among the nonzero entries.
    """
    M = [list(map(int, row)) for row in A]
    m = len(M)
    n = len(M[0]) if m else 0
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]
    Vi = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        M[i], M[j] = M[j], M[i]
        U[i], U[j] = U[j], U[i]

    def add_row(i, j, k):  # row_i += k * row_j
        M[i] = [a + k * b for a, b in zip(M[i], M[j])]
        U[i] = [a + k * b for a, b in zip(U[i], U[j])]

    def swap_cols(i, j):
        for row in M:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]
        Vi[i], Vi[j] = Vi[j], Vi[i]

    def add_col(i, j, k):  # col_i += k * col_j
        for row in M:
            row[i] += k * row[j]
        for row in V:
            row[i] += k * row[j]
        Vi[j] = [a - k * b for a, b in zip(Vi[j], Vi[i])]

    for t in range(min(m, n)):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if M[i][j] and (best is None or abs(M[i][j]) < abs(M[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            for i in range(t + 1, m):
                q = M[i][t] // M[t][t]
                if q:
                    add_row(i, t, -q)
            for j in range(t + 1, n):
                q = M[t][j] // M[t][t]
                if q:
                    add_col(j, t, -q)
            rest = [(i, t) for i in range(t + 1, m) if M[i][t]]
            rest += [(t, j) for j in range(t + 1, n) if M[t][j]]
            if rest:
                i, j = min(rest, key=lambda ij: abs(M[ij[0]][ij[1]]))
                if i != t:
                    swap_rows(t, i)
                else:
                    swap_cols(t, j)
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if M[i][j] % M[t][t]), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if M[t][t] < 0:
            M[t] = [-a for a in M[t]]
            U[t] = [-a for a in U[t]]
    d = [M[i][i] for i in range(min(m, n))]
    return d, U, V, Vi


# ---------------------------------------------------------------------------
# Groups and subgroups
# ---------------------------------------------------------------------------

class FinAbGroup:
    """Direct product of cyclic groups ``Z/m_1 x ... x Z/m_r``.

    The given moduli are kept as the coordinate system; they need not form a
    divisibility chain.  :attr:`invariant_factors` gives the normalized form.
    """

    def __init__(self, moduli: Iterable[int]):
        moduli = tuple(int(m) for m in moduli)
        for m in moduli:
            if m < 2:
                raise InvalidParameter(f"cyclic factor {m} must be at least 2")
        self.moduli = moduli
        self._hash = hash(("FinAbGroup", moduli))

    def __repr__(self):
        return f"FinAbGroup({list(self.moduli)})"

    def __eq__(self, other):
        return self is other or (isinstance(other, FinAbGroup) and self.moduli == other.moduli)

    def __hash__(self):
        return self._hash

    @property
    def rank(self) -> int:
        return len(self.moduli)

    @cached_property
    def order(self) -> int:
        return math.prod(self.moduli)

    @cached_property
    def exponent(self) -> int:
        return math.lcm(*self.moduli) if self.moduli else 1

    @cached_property
    def invariant_factors(self) -> tuple:
        if not self.moduli:
            return ()
        d = smith_normal_form([[m if i == j else 0 for j in range(self.rank)]
                               for i, m in enumerate(self.moduli)])[0]
        return tuple(x for x in d if x > 1)

    @property
    def identity(self) -> Element:
        return (0,) * self.rank

    def element(self, x) -> Element:
        if type(x) is tuple and x in self.index:
            return x
        if isinstance(x, int):
            x = (x,)
        x = tuple(int(a) for a in x)
        if len(x) != self.rank:
            raise InvalidParameter(f"element {x} has wrong length for {self}")
        return tuple(a % m for a, m in zip(x, self.moduli))

    def add(self, x: Element, y: Element) -> Element:
        return tuple((a + b) % m for a, b, m in zip(x, y, self.moduli))

    def sub(self, x: Element, y: Element) -> Element:
        return tuple((a - b) % m for a, b, m in zip(x, y, self.moduli))

    def neg(self, x: Element) -> Element:
        return tuple(-a % m for a, m in zip(x, self.moduli))

    def scale(self, x: Element, k: int) -> Element:
        return tuple(a * k % m for a, m in zip(x, self.moduli))

    def multiply(self, x: Element, y: Element) -> Element:
        return self.add(x, y)

    def inverse(self, x: Element) -> Element:
        return self.neg(x)

    def element_order(self, x: Element) -> int:
        return math.lcm(*(m // math.gcd(a, m) for a, m in zip(x, self.moduli))) if x else 1

    @cached_property
    def elements(self) -> tuple:
        return tuple(itertools.product(*(range(m) for m in self.moduli)))

    @cached_property
    def index(self) -> dict:
        return {x: i for i, x in enumerate(self.elements)}

    @cached_property
    def add_table(self) -> np.ndarray:
        """``add_table[i, j]`` is the index of ``elements[i] + elements[j]``."""
        coords = np.array(self.elements, dtype=np.int64).reshape(self.order, self.rank)
        mods = np.array(self.moduli, dtype=np.int64)
        sums = (coords[:, None, :] + coords[None, :, :]) % mods
        weights = np.array([math.prod(self.moduli[i + 1:]) for i in range(self.rank)],
                           dtype=np.int64)
        return (sums @ weights).astype(np.int64)

    @cached_property
    def neg_table(self) -> np.ndarray:
        return np.array([self.index[self.neg(x)] for x in self.elements], dtype=np.int64)

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return self.order

    def __contains__(self, x):
        return (isinstance(x, tuple) and len(x) == self.rank
                and all(isinstance(a, int) and 0 <= a < m for a, m in zip(x, self.moduli)))


def make_group(invariant_factors: Iterable[int]) -> FinAbGroup:
    return FinAbGroup(invariant_factors)


class Subgroup:
    """A subgroup stored by explicit, sorted enumeration of its elements."""

    def __init__(self, parent: FinAbGroup, elements: Iterable[Element]):
        self.parent = parent
        self.elements = tuple(sorted(set(elements)))
        self._set = frozenset(self.elements)
        self._hash = hash(("Subgroup", parent, self.elements))

    def __repr__(self):
        return f"Subgroup(order={self.order}, elements={list(self.elements)})"

    def __eq__(self, other):
        return self is other or (isinstance(other, Subgroup) and self.parent == other.parent
                                 and self.elements == other.elements)

    def __hash__(self):
        return self._hash

    def __contains__(self, x):
        return x in self._set

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    @cached_property
    def index(self) -> dict:
        return {x: i for i, x in enumerate(self.elements)}

    @cached_property
    def exponent(self) -> int:
        return math.lcm(*(self.parent.element_order(x) for x in self.elements))

    @property
    def is_elementary_2(self) -> bool:
        return self.exponent <= 2

    @cached_property
    def sqrt_order(self):
        """``l`` with ``l**2 == |T|``, or ``None`` when the order is not a square."""
        r = math.isqrt(self.order)
        return r if r * r == self.order else None

    @cached_property
    def basis(self) -> tuple:
        """Independent generators ``((t_1, d_1), ...)`` with ``T = sum <t_i>``.

        The orders ``d_i`` form a divisibility chain.
        """
        G = self.parent
        gens = _generating_set(self)
        if not gens:
            return ()
        r, s = G.rank, len(gens)
        A = [list(g) for g in gens] + [[m if i == j else 0 for j in range(r)]
                                       for i, m in enumerate(G.moduli)]
        _, U, _, _ = smith_normal_form(A)
        K = [row[:s] for row in U[r:]]
        d, _, _, Vi = smith_normal_form(K)
        out = []
        for j in range(s):
            dj = d[j] if j < len(d) else 0
            if dj == 1:
                continue
            x = Vi[j]
            elt = G.element([sum(x[i] * gens[i][c] for i in range(s)) for c in range(r)])
            out.append((elt, dj))
        return tuple(out)

    @property
    def invariant_factors(self) -> tuple:
        return tuple(d for _, d in self.basis)


def _generating_set(T: Subgroup) -> list:
    """Greedy lex-ordered generating set of ``T``."""
    G = T.parent
    span = {G.identity}
    gens = []
    for x in T.elements:
        if x not in span:
            gens.append(x)
            span = _closure(G, span, [x])
    return gens


def _closure(G: FinAbGroup, start: set, gens: Sequence[Element]) -> set:
    out = set(start)
    frontier = list(out)
    while frontier:
        new = []
        for y in frontier:
            for g in gens:
                z = G.add(y, g)
                if z not in out:
                    out.add(z)
                    new.append(z)
        frontier = new
    return out


def subgroup_from_generators(G: FinAbGroup, gens: Iterable) -> Subgroup:
    gens = [G.element(g) for g in gens]
    return Subgroup(G, _closure(G, {G.identity}, gens))


def trivial_subgroup(G: FinAbGroup) -> Subgroup:
    return Subgroup(G, [G.identity])


def all_subgroups(G: FinAbGroup) -> list:
    """Every subgroup of ``G``, sorted by order and then by element list."""
    found = {frozenset([G.identity])}
    frontier = list(found)
    while frontier:
        new = []
        for S in frontier:
            for x in G.elements:
                if x not in S:
                    bigger = frozenset(_closure(G, set(S), [x]))
                    if bigger not in found:
                        found.add(bigger)
                        new.append(bigger)
        frontier = new
    subs = [Subgroup(G, S) for S in found]
    subs.sort(key=lambda S: (S.order, S.elements))
    return subs


# ---------------------------------------------------------------------------
# Quotients
# ---------------------------------------------------------------------------

class Projection:
    """The surjection ``G -> G/N`` in invariant-factor coordinates."""

    def __init__(self, G: FinAbGroup, N: Subgroup, Q: FinAbGroup, V, keep):
        self.source = G
        self.kernel = N
        self.target = Q
        self._V = V
        self._keep = keep
        self.table = {x: self._apply(x) for x in G.elements}
        section = {}
        for x in G.elements:
            section.setdefault(self.table[x], x)
        self.section = section

    def _apply(self, x):
        r = self.source.rank
        y = [sum(x[i] * self._V[i][j] for i in range(r)) for j in range(r)]
        return tuple(y[j] % d for j, d in self._keep)

    def __call__(self, x):
        return self.table[self.source.element(x)]

    def lift(self, y):
        """Lex-minimal preimage."""
        return self.section[y]

    def image(self, S: Subgroup) -> Subgroup:
        return Subgroup(self.target, {self.table[x] for x in S.elements})


def quotient(G: FinAbGroup, N: Subgroup):
    r = G.rank
    rows = [list(g) for g in _generating_set(N)]
    rows += [[m if i == j else 0 for j in range(r)] for i, m in enumerate(G.moduli)]
    if r == 0:
        Q = FinAbGroup([])
        return Q, Projection(G, N, Q, [], [])
    d, _, V, _ = smith_normal_form(rows)
    keep = [(j, d[j]) for j in range(r) if d[j] > 1]
    Q = FinAbGroup([dj for _, dj in keep])
    proj = Projection(G, N, Q, V, keep)
    return Q, proj


# ---------------------------------------------------------------------------
# Cosets and transversals
# ---------------------------------------------------------------------------

class CosetTable:
    """Cosets of ``T`` in ``G`` with a transversal ``gamma``.

    Cosets are listed by their lex-minimal member.  In paired mode for
    ``g0`` every coset ``A`` has a partner ``-g0 - A``; a coset equal to its
    partner is *self-paired*.  For a proper pair the lex-smaller coset keeps
    its lex-minimal representative and the partner receives
    ``-g0 - gamma(A)``, so that ``g0 + gamma(A) + gamma(partner) = 0``.
    """

    def __init__(self, G: FinAbGroup, T: Subgroup, g0=None):
        self.group = G
        self.subgroup = T
        self.g0 = None if g0 is None else G.element(g0)
        seen = {}
        cosets = []
        for x in G.elements:
            if x in seen:
                continue
            members = tuple(sorted(G.add(x, t) for t in T.elements))
            for y in members:
                seen[y] = len(cosets)
            cosets.append(members)
        self.cosets = tuple(cosets)
        self.coset_of = seen
        gamma = [A[0] for A in cosets]
        if self.g0 is not None:
            partner = []
            for A in cosets:
                partner.append(seen[G.sub(G.neg(self.g0), A[0])])
            for i, j in enumerate(partner):
                if i < j:
                    gamma[j] = G.sub(G.neg(self.g0), gamma[i])
            self.partner = tuple(partner)
        else:
            self.partner = None
        self.gamma = tuple(gamma)

    def __repr__(self):
        return f"CosetTable({self.group}, |T|={self.subgroup.order}, g0={self.g0})"

    def __len__(self):
        return len(self.cosets)

    @property
    def paired(self) -> bool:
        return self.g0 is not None

    def coset_index(self, x) -> int:
        return self.coset_of[self.group.element(x)]

    def is_self_paired(self, a: int) -> bool:
        return self.partner[a] == a

    def shift(self, a: int, g) -> int:
        """Index of the coset ``A + g``."""
        return self.coset_of[self.group.add(self.cosets[a][0], g)]

    def negate(self, a: int) -> int:
        return self.coset_of[self.group.neg(self.cosets[a][0])]

    @cached_property
    def gamma_index(self) -> np.ndarray:
        idx = self.group.index
        return np.array([idx[g] for g in self.gamma], dtype=np.int64)

    @cached_property
    def coset_of_index(self) -> np.ndarray:
        """Coset index of each group element, by element index."""
        return np.array([self.coset_of[x] for x in self.group.elements], dtype=np.int64)

    def shift_permutation(self, g) -> tuple:
        """``perm[a]`` is the index of ``A_a + g``."""
        return tuple(self.shift(a, g) for a in range(len(self.cosets)))

    @cached_property
    def negation_permutation(self) -> tuple:
        return tuple(self.negate(a) for a in range(len(self.cosets)))


@lru_cache(maxsize=4096)
def _coset_table_cached(G: FinAbGroup, T: Subgroup, g0) -> CosetTable:
    return CosetTable(G, T, g0)


def coset_table(G: FinAbGroup, T: Subgroup, pairing=None) -> CosetTable:
    g0 = None if pairing is None else G.element(pairing)
    return _coset_table_cached(G, T, g0)


# ---------------------------------------------------------------------------
# Characters
# ---------------------------------------------------------------------------

class Character:
    """``chi(x) = exp(2 pi i * sum_k e_k x_k / m_k)``, stored by exponents.

    Values are returned as exponents in ``Fraction`` form reduced to
    ``[0, 1)``; a field converts them with ``RootField.root``.
    """

    def __init__(self, group: FinAbGroup, exponents: Iterable[int]):
        self.group = group
        self.exponents = tuple(int(e) % m for e, m in zip(exponents, group.moduli))
        if len(self.exponents) != group.rank:
            raise InvalidParameter("character exponent vector has wrong length")

    def __repr__(self):
        return f"Character({list(self.exponents)})"

    def __eq__(self, other):
        return (isinstance(other, Character) and self.group == other.group
                and self.exponents == other.exponents)

    def __hash__(self):
        return hash(("Character", self.group, self.exponents))

    @cached_property
    def _values(self) -> dict:
        return {x: _frac(sum(Fraction(a * e, m) for a, e, m in
                             zip(x, self.exponents, self.group.moduli)))
                for x in self.group.elements}

    def __call__(self, x) -> Fraction:
        return self._values[self.group.element(x)]

    def power(self, k: int) -> "Character":
        return Character(self.group, [e * k for e in self.exponents])


def solve_character(G: FinAbGroup, constraints) -> Character:
    """Canonical character with ``chi(x) = q`` for each ``(x, q)``.

    Among all solutions the one whose exponent vector, read from the last
    coordinate to the first, is lexicographically smallest is returned.
    """
    cons = [(G.element(x), _frac(q)) for x, q in constraints]
    best = None
    for exps in itertools.product(*(range(m) for m in G.moduli)):
        chi = Character(G, exps)
        if all(chi(x) == q for x, q in cons):
            key = exps[::-1]
            if best is None or key < best[0]:
                best = (key, chi)
    if best is None:
        raise NoCharacter(f"no character satisfies {cons}")
    return best[1]


# ---------------------------------------------------------------------------
# Bicharacters
# ---------------------------------------------------------------------------

class Bicharacter:
    """A bicharacter on a subgroup, given by a Gram matrix of exponents.

    ``gram[i][j]`` is the exponent ``q`` with ``beta(t_i, t_j) = exp(2 pi i q)``
    on the generators ``gens``.  Values on all of ``T`` are extended
    bi-additively along a fixed expression of each element in the generators.
    """

    def __init__(self, subgroup: Subgroup, gens, gram, verified: bool = False):
        G = subgroup.parent
        self.subgroup = subgroup
        self.gens = tuple(G.element(g) for g in gens)
        self.gram = tuple(tuple(_frac(q) for q in row) for row in gram)
        if len(self.gram) != len(self.gens) or any(len(r) != len(self.gens) for r in self.gram):
            raise InvalidParameter("gram matrix does not match the generator list")
        self.verified = verified

    def __repr__(self):
        return f"Bicharacter(gens={list(self.gens)}, gram={[[str(q) for q in r] for r in self.gram]})"

    @cached_property
    def modulus(self) -> int:
        dens = [q.denominator for row in self.gram for q in row]
        return math.lcm(self.subgroup.exponent, *dens) if dens else self.subgroup.exponent

    @cached_property
    def coordinates(self) -> dict:
        """An expression of every element of ``T`` as a combination of ``gens``."""
        G = self.subgroup.parent
        coords = {G.identity: (0,) * len(self.gens)}
        frontier = [G.identity]
        while frontier:
            new = []
            for y in frontier:
                for k, g in enumerate(self.gens):
                    z = G.add(y, g)
                    if z not in coords:
                        c = list(coords[y])
                        c[k] += 1
                        coords[z] = tuple(c)
                        new.append(z)
            frontier = new
        missing = [t for t in self.subgroup.elements if t not in coords]
        if missing or len(coords) != self.subgroup.order:
            raise InvalidBicharacter("generators do not generate the subgroup",
                                     witness=missing[0] if missing else None)
        return coords

    @cached_property
    def numerators(self) -> np.ndarray:
        """Values on ``T x T`` (sorted order) as integers mod :attr:`modulus`."""
        M = self.modulus
        gram = np.array([[int(q * M) for q in row] for row in self.gram],
                        dtype=np.int64).reshape(len(self.gens), len(self.gens))
        C = np.array([self.coordinates[t] for t in self.subgroup.elements],
                     dtype=np.int64).reshape(self.subgroup.order, len(self.gens))
        return (C @ gram @ C.T) % M

    def __call__(self, s, t) -> Fraction:
        idx = self.subgroup.index
        return Fraction(int(self.numerators[idx[s], idx[t]]), self.modulus)

    def value_table(self) -> dict:
        T = self.subgroup.elements
        return {(s, t): self(s, t) for s in T for t in T}

    @cached_property
    def _key(self):
        M = self.modulus
        # canonical comparison of value tables regardless of modulus
        return (self.subgroup, tuple(Fraction(int(v), M) for v in self.numerators.flat))

    def __eq__(self, other):
        return self is other or (isinstance(other, Bicharacter) and self._key == other._key)

    @cached_property
    def _hash(self):
        return hash(self._key)

    def __hash__(self):
        return self._hash

    def inverse(self) -> "Bicharacter":
        return Bicharacter(self.subgroup, self.gens,
                           [[-q for q in row] for row in self.gram], self.verified)


def trivial_bicharacter(T: Subgroup) -> Bicharacter:
    return Bicharacter(T, [], [], verified=T.order == 1)


def bicharacter_from_basis(T: Subgroup, gram) -> Bicharacter:
    """Bicharacter with the given Gram exponents on ``T.basis``."""
    return Bicharacter(T, [t for t, _ in T.basis], gram)


def validate_bicharacter(T: Subgroup, beta: Bicharacter) -> Bicharacter:
    if beta.subgroup != T:
        raise InvalidParameter("bicharacter lives on a different subgroup")
    for g in beta.gens:
        if g not in T:
            raise InvalidBicharacter(f"generator {g} is not in the subgroup", witness=g)
    M = beta.modulus
    B = beta.numerators
    els = T.elements
    k = len(els)
    G = T.parent
    tadd = np.array([[T.index[G.add(s, t)] for t in els] for s in els],
                    dtype=np.int64).reshape(k, k)
    # additivity in the first slot; the second follows from the alternating test below
    lhs = B[tadd]  # lhs[s, s', t] = beta(s + s', t)
    rhs = (B[:, None, :] + B[None, :, :]) % M
    bad = np.argwhere(lhs != rhs)
    if len(bad):
        s, s2, t = bad[0]
        raise InvalidBicharacter("not multiplicative", witness=(els[s], els[s2], els[t]))
    lhs2 = B[:, tadd]  # lhs2[s, t, t'] = beta(s, t + t')
    rhs2 = (B[:, :, None] + B[:, None, :]) % M
    bad = np.argwhere(lhs2 != rhs2)
    if len(bad):
        s, t, t2 = bad[0]
        raise InvalidBicharacter("not multiplicative", witness=(els[s], els[t], els[t2]))
    diag = np.nonzero(np.diagonal(B))[0]
    if len(diag):
        raise InvalidBicharacter("not alternating", witness=els[diag[0]])
    radical = [els[i] for i in range(k) if not B[i].any()]
    if radical != [G.identity]:
        raise InvalidBicharacter("degenerate: nontrivial radical", witness=radical[-1])
    inv = beta.inverse()
    if not np.array_equal((inv.numerators + B) % M, np.zeros_like(B)):
        raise InvalidBicharacter("inverse bicharacter mismatch")
    return Bicharacter(T, beta.gens, beta.gram, verified=True)


def alternating_bicharacters(T: Subgroup) -> list:
    """All nondegenerate alternating bicharacters on ``T``.

    Enumerated by their Gram matrices on ``T.basis``: entries above the
    diagonal range over ``(1/gcd(d_i, d_j)) Z / Z`` in lexicographic order.
    """
    basis = T.basis
    k = len(basis)
    if T.sqrt_order is None:
        return []
    if k == 0:
        return [Bicharacter(T, [], [], verified=True)]
    slots = [(i, j) for i in range(k) for j in range(i + 1, k)]
    ranges = [[Fraction(a, math.gcd(basis[i][1], basis[j][1]))
               for a in range(math.gcd(basis[i][1], basis[j][1]))] for i, j in slots]
    out = []
    for values in itertools.product(*ranges):
        gram = [[Fraction(0)] * k for _ in range(k)]
        for (i, j), q in zip(slots, values):
            gram[i][j] = q
            gram[j][i] = _frac(-q)
        beta = Bicharacter(T, [t for t, _ in basis], gram)
        try:
            out.append(validate_bicharacter(T, beta))
        except InvalidBicharacter:
            continue
    return out


# ---------------------------------------------------------------------------
# Symplectic bases
# ---------------------------------------------------------------------------

class SymplecticBasis:
    """Pairs ``(u_i, v_i)`` with ``beta(u_i, v_i) = 1/l_i`` and orthogonal blocks."""

    def __init__(self, subgroup: Subgroup, beta: Bicharacter, pairs, orders):
        self.subgroup = subgroup
        self.beta = beta
        self.pairs = tuple(pairs)
        self.orders = tuple(orders)

    def __repr__(self):
        return f"SymplecticBasis({list(self.pairs)}, orders={list(self.orders)})"

    @property
    def ell(self) -> int:
        return math.prod(self.orders)

    @cached_property
    def coordinates(self) -> dict:
        """``t -> (a_1, b_1, a_2, b_2, ...)`` with ``t = sum a_i u_i + b_i v_i``."""
        G = self.subgroup.parent
        out = {}
        for combo in itertools.product(*(range(l) for l in self.orders for _ in (0, 1))):
            t = G.identity
            for (u, v), (a, b) in zip(self.pairs, zip(combo[::2], combo[1::2])):
                t = G.add(t, G.add(G.scale(u, a), G.scale(v, b)))
            out[t] = combo
        return out


def symplectic_basis(T: Subgroup, beta: Bicharacter) -> SymplecticBasis:
    """Deterministic symplectic basis.

    At each step ``l`` is the largest element order left, and the pair
    ``(u, v)`` with both of order ``l`` and ``beta(u, v) = 1/l`` that comes
    first when ordered by ``(v, u)`` is chosen; the search then continues in
    the orthogonal complement of the pair.
    """
    if T.sqrt_order is None:
        raise InvalidParameter(f"|T| = {T.order} is not a perfect square")
    G = T.parent
    W = list(T.elements)
    pairs, orders = [], []
    while len(W) > 1:
        ell = max(G.element_order(x) for x in W)
        top = [x for x in W if G.element_order(x) == ell]
        target = Fraction(1, ell)
        choice = next(((u, v) for v in top for u in top if beta(u, v) == target), None)
        if choice is None:
            raise InvalidParameter("bicharacter is degenerate on the subgroup")
        u, v = choice
        pairs.append(choice)
        orders.append(ell)
        W = [t for t in W if beta(u, t) == 0 and beta(v, t) == 0]
    if math.prod(orders) ** 2 != T.order:
        raise InvalidParameter("bicharacter is degenerate on the subgroup")
    return SymplecticBasis(T, beta, pairs, orders)
