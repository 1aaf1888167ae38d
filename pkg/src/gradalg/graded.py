"""Graded matrix algebras ``M_k(D)`` and generic grading checks.

A :class:`GradedMatrixAlgebra` is determined by a Pauli algebra ``D`` over a
subgroup ``T`` of ``G`` and a list of *row degrees* ``h_1, ..., h_k``.  Its
basis element ``(r, c, t)`` is the ``n x n`` matrix with ``X_t`` in block
``(r, c)`` and its degree is ``h_r + t - h_c``.  :func:`build_F` takes the
row degrees from a multiplicity map on ``G/T`` and a transversal;
:func:`elementary_grading` takes them verbatim.

Dense matrices are only realized on demand, so that large parameter sweeps
can run the structured checks without allocating them.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from functools import cached_property

import numpy as np

from .errors import InternalError, InvalidParameter
from .field import Subspace, left_nullspace, mat_inv, rank
from .groups import CosetTable, FinAbGroup, coset_table, subgroup_from_generators
from .pauli import PauliAlgebra

__all__ = [
    "KappaMap",
    "GradedMatrixAlgebra",
    "GradedDecomposition",
    "GradingReport",
    "Violation",
    "Fingerprint",
    "GradedEmbedding",
    "build_F",
    "verify_grading",
    "elementary_grading",
    "shift_kappa",
    "reflect_kappa",
    "embed",
    "fingerprint",
    "block_conjugator",
]


# ---------------------------------------------------------------------------
# multiplicity maps
# ---------------------------------------------------------------------------

class KappaMap:
    """Multiplicities ``kappa(A)`` for the cosets of a :class:`CosetTable`."""

    __slots__ = ("table", "values")

    def __init__(self, table: CosetTable, values):
        if isinstance(values, dict):
            vals = [0] * len(table.cosets)
            for key, v in values.items():
                a = key if isinstance(key, int) and not isinstance(key, bool) else table.coset_index(key)
                vals[a] = int(v)
            values = vals
        if type(values) is not tuple:
            values = tuple(int(v) for v in values)
        if len(values) != len(table.cosets):
            raise InvalidParameter(f"kappa needs {len(table.cosets)} values, got {len(values)}")
        if values and min(values) < 0:
            raise InvalidParameter("kappa values must be nonnegative")
        self.table = table
        self.values = values

    def __repr__(self):
        return f"KappaMap({list(self.values)})"

    def __eq__(self, other):
        return (isinstance(other, KappaMap) and self.values == other.values
                and self.table.group == other.table.group
                and self.table.subgroup == other.table.subgroup)

    def __hash__(self):
        return hash((self.values, self.table.group, self.table.subgroup))

    def __getitem__(self, a):
        if not isinstance(a, int):
            a = self.table.coset_index(a)
        return self.values[a]

    @property
    def total(self) -> int:
        return sum(self.values)

    @property
    def support(self) -> tuple:
        return tuple(a for a, v in enumerate(self.values) if v)

    def with_table(self, table: CosetTable) -> "KappaMap":
        """Same multiplicities with respect to another transversal of the same cosets."""
        if table.cosets != self.table.cosets:
            raise InvalidParameter("coset tables disagree")
        return KappaMap(table, self.values)

    def shifted(self, g) -> "KappaMap":
        return shift_kappa(self, g)

    def reflected(self) -> "KappaMap":
        return reflect_kappa(self)

    def dominated_by(self, other: "KappaMap") -> bool:
        return all(a <= b for a, b in zip(self.values, other.values))


def shift_kappa(kappa: KappaMap, g) -> KappaMap:
    """``kappa^g`` with ``kappa^g(A + g) = kappa(A)``."""
    g = kappa.table.group.element(g)
    perm = kappa.table.shift_permutation(g)
    vals = [0] * len(kappa.values)
    for a, v in enumerate(kappa.values):
        vals[perm[a]] = v
    return KappaMap(kappa.table, vals)


def reflect_kappa(kappa: KappaMap) -> KappaMap:
    """``A -> kappa(-A)``."""
    perm = kappa.table.negation_permutation
    return KappaMap(kappa.table, [kappa.values[perm[a]] for a in range(len(kappa.values))])


# ---------------------------------------------------------------------------
# decompositions and reports
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Violation:
    g: tuple
    h: tuple
    witness: tuple          # indices (i, j) into the bases of the g and h components
    count: int              # number of violating basis pairs for (g, h)
    kind: str = "closure"

    def as_dict(self):
        return {"g": list(self.g), "h": list(self.h), "witness": list(self.witness),
                "count": self.count, "kind": self.kind}


@dataclass
class GradingReport:
    direct_sum: bool
    total_dim: int
    expected_dim: int
    violations: list = dc_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.direct_sum and self.total_dim == self.expected_dim and not self.violations

    def as_dict(self):
        return {"direct_sum": self.direct_sum, "total_dim": self.total_dim,
                "expected_dim": self.expected_dim,
                "violations": [v.as_dict() for v in self.violations]}


class GradedDecomposition:
    """Homogeneous components ``g -> Subspace`` of flattened ``n x n`` matrices."""

    def __init__(self, group: FinAbGroup, n: int, p: int, components: dict, expected_dim=None):
        self.group = group
        self.n = n
        self.p = p
        self.components = {g: S for g, S in components.items() if S.dim}
        self.expected_dim = n * n if expected_dim is None else expected_dim

    @property
    def support(self) -> tuple:
        return tuple(sorted(self.components))

    @property
    def dims(self) -> dict:
        return {g: S.dim for g, S in sorted(self.components.items())}

    def component(self, g) -> Subspace:
        S = self.components.get(g)
        return S if S is not None else Subspace.zero(self.n * self.n, self.p)

    def basis_matrices(self, g) -> np.ndarray:
        return self.component(g).basis.reshape(-1, self.n, self.n)


def _products(kind, A, B, p):
    """All products ``A[i] * B[j]`` as an array of shape ``(len A, len B, n, n)``."""
    AB = np.matmul(A[:, None], B[None, :]) % p
    if kind == "assoc":
        return AB
    if kind == "lie":
        BA = np.matmul(B[None, :], A[:, None]) % p
        return (AB - BA) % p
    raise InvalidParameter(f"unknown product {kind!r}")


def verify_grading(decomposition: GradedDecomposition, product="assoc") -> GradingReport:
    """Dense check of the grading axioms, reporting every violating pair of degrees."""
    dec = decomposition
    G, p, n = dec.group, dec.p, dec.n
    supp = dec.support
    bases = [dec.components[g].basis for g in supp]
    total = sum(len(b) for b in bases)
    stacked = np.vstack(bases) if bases else np.zeros((0, n * n), dtype=np.int64)
    direct = rank(stacked, p) == total if total else True
    report = GradingReport(direct, total, dec.expected_dim)
    for g in supp:
        A = dec.basis_matrices(g)
        for h in supp:
            B = dec.basis_matrices(h)
            prods = _products(product, A, B, p).reshape(len(A) * len(B), n * n)
            target = dec.component(G.add(g, h))
            bad = np.nonzero(target.residual(prods).any(axis=1))[0]
            if len(bad):
                i, j = divmod(int(bad[0]), len(B))
                report.violations.append(Violation(g, h, (i, j), len(bad)))
    return report


# ---------------------------------------------------------------------------
# the graded matrix algebra
# ---------------------------------------------------------------------------

class GradedMatrixAlgebra:
    """``M_k(D)`` with row degrees ``h_r``; see the module docstring."""

    def __init__(self, group: FinAbGroup, pauli: PauliAlgebra, row_degree, rows=None,
                 kappa: KappaMap = None):
        self.group = group
        self.pauli = pauli
        self.field = pauli.field
        self.kappa = kappa
        if row_degree is None:
            # filled lazily from kappa
            self._row_degree = None
            self.k = kappa.total
        else:
            self._row_degree = np.asarray(row_degree, dtype=np.int64)
            self.k = len(self._row_degree)
        self.rows = rows
        self.ell = pauli.ell
        self.n = self.k * self.ell
        if self.k < 1:
            raise InvalidParameter("the algebra needs at least one block row")

    def __repr__(self):
        return f"GradedMatrixAlgebra(n={self.n}, k={self.k}, ell={self.ell}, G={self.group})"

    @property
    def row_degree(self) -> np.ndarray:
        """Group index of the degree ``h_r`` of each block row."""
        if self._row_degree is None:
            self._row_degree = np.repeat(self.kappa.table.gamma_index, self.kappa.values)
        return self._row_degree

    # -- index bookkeeping -------------------------------------------------

    @property
    def t_index(self) -> np.ndarray:
        """Group index of each element of ``T`` (in sorted ``T`` order)."""
        return self.pauli.group_index

    @cached_property
    def degree_table(self) -> np.ndarray:
        """``degree_table[r, c, t]``: group index of ``h_r + t - h_c``."""
        add = self.group.add_table
        neg = self.group.neg_table
        h = self.row_degree
        return add[add[h[:, None, None], self.t_index[None, None, :]], neg[h][None, :, None]]

    @property
    def basis_size(self) -> int:
        return self.k * self.k * self.pauli.T.order

    def basis_index(self) -> list:
        """Triples ``(row label, column label, t)`` in basis order."""
        labels = self.rows if self.rows is not None else list(range(self.k))
        return [(labels[r], labels[c], t) for r in range(self.k) for c in range(self.k)
                for t in self.pauli.elements]

    def split_index(self, i: int) -> tuple:
        m = self.pauli.T.order
        r, rest = divmod(i, self.k * m)
        c, t = divmod(rest, m)
        return r, c, t

    def degree(self, i: int) -> tuple:
        r, c, t = self.split_index(i)
        return self.group.elements[self.degree_table[r, c, t]]

    @cached_property
    def dims(self) -> dict:
        counts = np.bincount(self.degree_table.reshape(-1), minlength=self.group.order)
        els = self.group.elements
        return {els[i]: int(c) for i, c in enumerate(counts) if c}

    @property
    def support(self) -> tuple:
        return tuple(sorted(self.dims))

    # -- realization ---------------------------------------------------------

    def realize(self, r: int, c: int, t: int) -> np.ndarray:
        """The matrix ``X_t`` placed in block ``(r, c)``."""
        l = self.ell
        M = np.zeros((self.n, self.n), dtype=np.int64)
        M[r * l:(r + 1) * l, c * l:(c + 1) * l] = self.pauli.matrices[t]
        return M

    @cached_property
    def basis_matrices(self) -> np.ndarray:
        k, l, m = self.k, self.ell, self.pauli.T.order
        B = np.zeros((k, k, m, k, l, k, l), dtype=np.int64)
        for r in range(k):
            for c in range(k):
                B[r, c, :, r, :, c, :] = self.pauli.matrices
        return B.reshape(k * k * m, self.n, self.n)

    def element(self, coefficients) -> np.ndarray:
        """Matrix of a combination of basis elements given by coefficients."""
        coeff = np.asarray(coefficients, dtype=np.int64) % self.field.p
        return np.tensordot(coeff, self.basis_matrices, axes=1) % self.field.p

    @cached_property
    def components(self) -> dict:
        deg = self.degree_table.reshape(-1)
        B = self.basis_matrices.reshape(len(deg), -1)
        p = self.field.p
        out = {}
        for gi in np.unique(deg):
            out[self.group.elements[gi]] = Subspace(B[deg == gi], p, self.n * self.n)
        return out

    def decomposition(self) -> GradedDecomposition:
        return GradedDecomposition(self.group, self.n, self.field.p, self.components)

    # -- checks ----------------------------------------------------------------

    def verify(self) -> GradingReport:
        """Structured exact check of the grading axioms.

        Basis elements multiply as ``E(r,c,s) E(c',d,t) = [c = c'] sigma(s,t)
        E(r,d,s+t)``, with ``sigma`` read off the realized Pauli matrices, so
        closure amounts to additivity of the degree table over all
        composable triples.  Independence of the basis follows from the block
        layout together with the independence of the Pauli matrices.
        """
        D = self.degree_table
        add = self.group.add_table
        S = self.pauli.sum_index
        lhs = add[D[:, :, None, :, None], D[None, :, :, None, :]]
        rhs = D[:, :, S][:, None, :, :, :]
        mismatch = lhs != rhs
        total = int(np.bincount(D.reshape(-1)).sum())
        report = GradingReport(True, total, self.n * self.n)
        if mismatch.any():
            bad = np.argwhere(mismatch)
            els = self.group.elements
            seen = {}
            for r, c, d, s, t in bad:
                key = (els[D[r, c, s]], els[D[c, d, t]])
                if key in seen:
                    seen[key][1] += 1
                else:
                    seen[key] = [(int(r), int(c), int(d), int(s), int(t)), 1]
            for (g, h), (w, cnt) in sorted(seen.items()):
                report.violations.append(Violation(g, h, w, cnt))
        return report

    def check_structure_constants(self) -> list:
        """Realized products versus the abstract multiplication rule.

        Returns the list of failing basis pairs (empty when every product
        agrees).  Cost is quadratic in the basis size.
        """
        p = self.field.p
        B = self.basis_matrices
        N = len(B)
        m = self.pauli.T.order
        failures = []
        for i in range(N):
            r, c, s = self.split_index(i)
            prods = np.matmul(B[i], B) % p
            expected = np.zeros_like(prods)
            for d in range(self.k):
                for t in range(m):
                    j = (c * self.k + d) * m + t
                    target = (r * self.k + d) * m + self.pauli.sum_index[s, t]
                    expected[j] = self.pauli.sigma[s, t] * B[target] % p
            bad = np.nonzero((prods != expected).reshape(N, -1).any(axis=1))[0]
            failures.extend((i, int(j)) for j in bad)
        return failures


def build_F(G: FinAbGroup, D: PauliAlgebra, kappa) -> GradedMatrixAlgebra:
    """The algebra with one block row per pair ``(A, i)``, ``i < kappa(A)``.

    Row blocks are ordered by coset (cosets sorted by their lex-minimal
    member) and then by ``i``; the degree of row ``(A, i)`` is ``gamma(A)``.
    """
    if not isinstance(kappa, KappaMap):
        kappa = KappaMap(coset_table(G, D.T), kappa)
    table = kappa.table
    if (table.group is not G and table.group != G) or (
            table.subgroup is not D.T and table.subgroup != D.T):
        raise InvalidParameter("kappa is defined on a different coset table")
    k = sum(kappa.values)
    if k < 1:
        raise InvalidParameter("kappa is identically zero")
    # skips __init__; this runs inside the big sweeps
    alg = GradedMatrixAlgebra.__new__(GradedMatrixAlgebra)
    alg.group = G
    alg.pauli = D
    alg.field = D.field
    alg.kappa = kappa
    alg._row_degree = None
    alg.k = k
    alg.rows = _RowLabels(kappa.values)
    alg.ell = D.ell
    alg.n = k * D.ell
    return alg


class _RowLabels:
    """Lazy sequence of ``(coset index, i)`` row labels."""

    def __init__(self, values):
        self.values = values
        self._labels = None

    def _get(self):
        if self._labels is None:
            self._labels = [(a, i) for a, v in enumerate(self.values) for i in range(v)]
        return self._labels

    def __len__(self):
        return sum(self.values)

    def __getitem__(self, r):
        return self._get()[r]

    def __iter__(self):
        return iter(self._get())

    def index(self, label):
        return self._get().index(label)


def block_conjugator(source: GradedMatrixAlgebra, target: GradedMatrixAlgebra, row_map,
                     blocks) -> np.ndarray:
    """Block-monomial ``u`` with block ``(row_map[r], r)`` equal to ``blocks[r]``."""
    l = source.ell
    u = np.zeros((target.n, source.n), dtype=np.int64)
    for r, (rr, blk) in enumerate(zip(row_map, blocks)):
        u[rr * l:(rr + 1) * l, r * l:(r + 1) * l] = blk
    return u % source.field.p


def conjugate_components(u: np.ndarray, dec: GradedDecomposition, p: int,
                         pre=None) -> dict:
    """``g -> u pre(x) u^-1`` applied to every component."""
    uinv = mat_inv(u, p)
    out = {}
    for g in dec.support:
        B = dec.basis_matrices(g)
        if pre is not None:
            B = pre(B)
        C = np.matmul(np.matmul(u, B) % p, uinv) % p
        out[g] = Subspace(C.reshape(len(C), -1), p, dec.n * dec.n)
    return out


def elementary_grading(D: PauliAlgebra, degrees, G: FinAbGroup = None) -> GradedMatrixAlgebra:
    """``M_k(D)`` with ``deg(E_ij (x) X_t) = h_i + t - h_j`` for the given ``h_i``.

    The result is checked against :func:`build_F` for the multiplicities of
    the cosets ``h_i + T``: conjugation by the block-monomial matrix with
    blocks ``X_{gamma(h_i + T) - h_i}`` must carry one decomposition onto the
    other.
    """
    G = D.T.parent if G is None else G
    hs = [G.element(h) for h in degrees]
    if not hs:
        raise InvalidParameter("at least one degree is required")
    E = GradedMatrixAlgebra(G, D, [G.index[h] for h in hs])
    table = coset_table(G, D.T)
    counts = [0] * len(table.cosets)
    positions = []
    for h in hs:
        a = table.coset_of[h]
        positions.append((a, counts[a]))
        counts[a] += 1
    E.kappa = KappaMap(table, counts)
    E.rows = positions
    R = build_F(G, D, E.kappa)
    where = {lab: i for i, lab in enumerate(positions)}
    row_map = [where[lab] for lab in R.rows]
    blocks = [D.X[G.sub(table.gamma[a], hs[where[(a, i)]])] for a, i in R.rows]
    u = block_conjugator(R, E, row_map, blocks)
    conj = conjugate_components(u, R.decomposition(), D.field.p)
    if any(conj[g] != E.components.get(g) for g in conj) or set(conj) != set(E.components):
        raise InternalError("elementary grading disagrees with the coset construction")
    return E


# ---------------------------------------------------------------------------
# embeddings
# ---------------------------------------------------------------------------

class GradedEmbedding:
    """Non-unital map sending each basis element to the same-named one."""

    def __init__(self, small: GradedMatrixAlgebra, large: GradedMatrixAlgebra, row_map):
        self.small = small
        self.large = large
        self.row_map = tuple(int(r) for r in row_map)

    def map_matrix(self, M) -> np.ndarray:
        M = np.asarray(M)
        l = self.small.ell
        idx = np.concatenate([np.arange(r * l, (r + 1) * l) for r in self.row_map])
        out = np.zeros(M.shape[:-2] + (self.large.n, self.large.n), dtype=np.int64)
        out[..., idx[:, None], idx[None, :]] = M
        return out

    def map_index(self, i: int) -> int:
        r, c, t = self.small.split_index(i)
        k, m = self.large.k, self.large.pauli.T.order
        return (self.row_map[r] * k + self.row_map[c]) * m + t

    def compose(self, after: "GradedEmbedding") -> "GradedEmbedding":
        """``after`` applied after ``self``."""
        if after.small is not self.large and after.small.n != self.large.n:
            raise InvalidParameter("embeddings do not compose")
        return GradedEmbedding(self.small, after.large,
                               [after.row_map[r] for r in self.row_map])

    def __eq__(self, other):
        return (isinstance(other, GradedEmbedding) and self.row_map == other.row_map
                and self.small.n == other.small.n and self.large.n == other.large.n)

    def verify(self) -> dict:
        """Injectivity, degree preservation and multiplicativity on all basis pairs."""
        p = self.small.field.p
        Bs = self.small.basis_matrices
        Ms = self.map_matrix(Bs)
        N = len(Bs)
        injective = rank(Ms.reshape(N, -1), p) == N
        Bl = self.large.basis_matrices
        same_name = all(np.array_equal(Ms[i], Bl[self.map_index(i)]) for i in range(N))
        degrees = all(self.small.degree(i) == self.large.degree(self.map_index(i))
                      for i in range(N))
        mult = True
        for i in range(N):
            lhs = np.matmul(Ms[i], Ms) % p
            rhs = self.map_matrix(np.matmul(Bs[i], Bs) % p)
            if not np.array_equal(lhs, rhs):
                mult = False
                break
        return {"injective": injective, "same_name": same_name,
                "degree_preserving": degrees, "multiplicative": mult}


def embed(small: GradedMatrixAlgebra, large: GradedMatrixAlgebra) -> GradedEmbedding:
    same_division = small.pauli is large.pauli or (
        small.pauli.T == large.pauli.T and small.pauli.beta == large.pauli.beta)
    if small.group != large.group or not same_division:
        raise InvalidParameter("algebras use different gradings of the division algebra")
    ks, kl = small.kappa, large.kappa
    if ks is None or kl is None:
        raise InvalidParameter("embedding needs algebras built from multiplicity maps")
    if ks.table.gamma != kl.table.gamma:
        raise InvalidParameter("algebras use different transversals")
    if not ks.dominated_by(kl):
        raise InvalidParameter("kappa of the small algebra is not dominated")
    large_labels = {lab: r for r, lab in enumerate(large.rows)}
    return GradedEmbedding(small, large, [large_labels[lab] for lab in small.rows])


# ---------------------------------------------------------------------------
# fingerprints
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Fingerprint:
    support: tuple
    dims: tuple                 # sorted (g, dim) pairs
    support_subgroup: tuple     # sorted elements of the subgroup generated by the support
    blocks: tuple               # sorted identity-component block sizes
    total: int

    def as_dict(self):
        return {"support": [list(g) for g in self.support],
                "dims": [[list(g), d] for g, d in self.dims],
                "support_subgroup": [list(g) for g in self.support_subgroup],
                "blocks": list(self.blocks), "total": self.total}


def _generated_algebra(gens: np.ndarray, n: int, p: int) -> Subspace:
    """Unital associative algebra generated by the given matrices."""
    gens = np.asarray(gens, dtype=np.int64).reshape(-1, n, n)
    span = Subspace(np.vstack([np.eye(n, dtype=np.int64).reshape(1, -1),
                               gens.reshape(len(gens), n * n)]), p, n * n)
    while True:
        B = span.basis.reshape(-1, n, n)
        prods = np.matmul(B[:, None], gens[None, :]).reshape(-1, n * n) % p
        new = span.span(prods)
        if new.dim == span.dim:
            return span
        span = new


def _isotypic_blocks(gens: np.ndarray, n: int, p: int, seed: int = 0) -> tuple:
    """Dimensions of the generalized eigenspaces of a generic central element.

    The unital algebra ``A`` generated by ``gens`` acts on ``F^n``; a generic
    element of its center separates the blocks cut out by the central
    idempotents of ``A``.  The finest split found among a few deterministic
    random candidates is reported; any part not split over ``F_p`` is
    reported as a single remaining block.
    """
    A = _generated_algebra(gens, n, p)
    Ab = A.basis.reshape(-1, n, n)
    # center: coefficient vectors c with [sum c_i A_i, g] = 0 for every generator g
    comm = [(np.matmul(Ab, g) - np.matmul(g, Ab)) % p for g in gens]
    if comm:
        M = np.concatenate([c.reshape(len(Ab), -1) for c in comm], axis=1)
        Z = left_nullspace(M, p) @ A.basis.reshape(len(Ab), -1) % p
    else:
        Z = A.basis.reshape(len(Ab), -1)
    Z = Z.reshape(-1, n, n)
    rng = random.Random(seed)
    best = None
    for attempt in range(8):
        coeff = np.array([rng.randrange(p) for _ in range(len(Z))], dtype=np.int64)
        z = np.tensordot(coeff, Z, axes=1) % p
        sizes = []
        for lam in range(p):
            m = (z - lam * np.eye(n, dtype=np.int64)) % p
            if rank(m, p) == n:
                continue
            power = m.copy()
            for _ in range(max(1, int(np.ceil(np.log2(n))))):
                power = np.matmul(power, power) % p
            sizes.append(n - rank(power, p))
        rest = n - sum(sizes)
        if rest:
            sizes.append(rest)
        sizes = tuple(sorted(sizes))
        if best is None or len(sizes) > len(best):
            best = sizes
        if len(best) == len(Z):
            break
    return best


def fingerprint(obj, identity=None) -> Fingerprint:
    """Isomorphism invariants of a verified grading.

    ``obj`` may be a :class:`GradedMatrixAlgebra`, a graded Lie algebra or a
    :class:`GradedDecomposition`.
    """
    if hasattr(obj, "decomposition"):
        dec = obj.decomposition()
    else:
        dec = obj
    G = dec.group
    identity = G.identity if identity is None else identity
    dims = dec.dims
    support = tuple(sorted(dims))
    sub = subgroup_from_generators(G, support).elements
    gens = dec.basis_matrices(identity)
    blocks = _isotypic_blocks(gens, dec.n, dec.p)
    return Fingerprint(support, tuple(sorted(dims.items())), sub, blocks, sum(dims.values()))
