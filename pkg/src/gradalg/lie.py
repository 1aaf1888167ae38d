"""Graded Lie algebras: traceless and skew parts of graded matrix algebras.

Four families are built:

* ``A-I``: the traceless part of a ``G``-graded matrix algebra;
* ``A-II``: the traceless part of a ``G/<h>``-graded algebra with an
  antiautomorphism ``phi``, regraded by ``G`` through the eigenspaces
  ``R_g = {r in R_gbar : phi(r) = -chi(g) r}`` for a character ``chi`` with
  ``chi(h) = -1``;
* ``B`` and ``C``: the ``phi``-skew elements for an orthogonal, respectively
  symplectic, involution.

Components are computed as subspaces of the coordinate space of the
ambient basis ``E(r, c, t)``.  Graded bases are produced separately from
closed formulas in terms of tensors ``v (x) X_t (x) w`` and compared with
those components by :func:`verify_lie`.

The tensor ``v (x) X_t (x) w`` acts by ``u -> v X_t B(w, u)``; in block form
it is ``b_w sigma(t, y_w) E(v, pi(w), t + y_w)`` where the only nonzero
block of the Gram matrix in row ``w`` is ``b_w X_{y_w}`` at column ``pi(w)``.
"""

from __future__ import annotations

import logging
from fractions import Fraction
from dataclasses import dataclass, field as dc_field, replace
from functools import cached_property, lru_cache

import numpy as np

from .errors import (InvalidParameter, NoForm, NoInvolution, RejectedParameters,
                     SplittingViolation)
from .field import field_for_group, independent_rows, nullspace, rank, Subspace
from .forms import (InvolutionData, build_B_and_S, check_compat_38, exist_involution,
                    mu_from_delta, mu_from_type2)
from .graded import (GradedDecomposition, GradingReport, KappaMap, build_F, verify_grading)
from .groups import (FinAbGroup, Subgroup, coset_table, quotient, solve_character,
                     subgroup_from_generators, validate_bicharacter)
from .pauli import pauli_for

log = logging.getLogger(__name__)

__all__ = [
    "GradedLieAlgebra",
    "LieReport",
    "build_AI",
    "build_AII",
    "build_B",
    "build_C",
    "verify_lie",
    "expected_dimension",
]

FAMILIES = ("A-I", "A-II", "B", "C")


def expected_dimension(family: str, n: int) -> int:
    if family in ("A-I", "A-II"):
        return n * n - 1
    if family == "B":
        return n * (n - 1) // 2
    if family == "C":
        return n * (n + 1) // 2
    raise InvalidParameter(f"unknown family {family!r}")


class GradedLieAlgebra:
    """A graded Lie subalgebra of ``M_n(F)`` with a homogeneous basis.

    ``coords[g]`` is the component ``L_g`` as a subspace of the coordinate
    space of ``ambient``; ``basis_coords[g]`` holds the formula basis of the
    same degree in those coordinates.
    """

    def __init__(self, family, params, group, ambient, coords, basis_coords,
                 involution: InvolutionData = None, chi=None, proj=None, refinement=None):
        self.family = family
        self.params = params
        self.group = group
        self.ambient = ambient
        self.coords = {g: S for g, S in coords.items() if S.dim}
        self.basis_coords = {g: B for g, B in basis_coords.items() if len(B)}
        self.involution = involution
        self.chi = chi
        self.proj = proj
        self.refinement = refinement
        self.n = ambient.n
        self.p = ambient.field.p

    def __repr__(self):
        return f"GradedLieAlgebra({self.family}, n={self.n}, dim={self.dim})"

    @property
    def dims(self) -> dict:
        return {g: S.dim for g, S in sorted(self.coords.items())}

    @property
    def support(self) -> tuple:
        return tuple(sorted(self.coords))

    @property
    def dim(self) -> int:
        return sum(S.dim for S in self.coords.values())

    @cached_property
    def _flat_basis(self) -> np.ndarray:
        return self.ambient.basis_matrices.reshape(self.ambient.basis_size, -1)

    def to_matrices(self, coords) -> np.ndarray:
        C = np.asarray(coords, dtype=np.int64).reshape(-1, self.ambient.basis_size)
        return (C @ self._flat_basis % self.p).reshape(-1, self.n, self.n)

    def graded_basis(self, g) -> np.ndarray:
        g = self.group.element(g)
        B = self.basis_coords.get(g)
        if B is None:
            return np.zeros((0, self.n, self.n), dtype=np.int64)
        return self.to_matrices(B)

    @cached_property
    def components(self) -> dict:
        """``g -> Subspace`` of flattened matrices."""
        n2 = self.n * self.n
        return {g: Subspace(self.to_matrices(S.basis).reshape(-1, n2), self.p, n2)
                for g, S in self.coords.items()}

    def decomposition(self) -> GradedDecomposition:
        return GradedDecomposition(self.group, self.n, self.p, self.components,
                                   expected_dim=expected_dimension(self.family, self.n))

    def refined_decomposition(self) -> GradedDecomposition:
        """The ``G``-graded decomposition of the whole ambient algebra (``A-II`` only)."""
        if self.refinement is None:
            raise InvalidParameter("only Type II algebras carry a refinement of the ambient")
        n2 = self.n * self.n
        comps = {g: Subspace(self.to_matrices(S.basis).reshape(-1, n2), self.p, n2)
                 for g, S in self.refinement.items() if S.dim}
        return GradedDecomposition(self.group, self.n, self.p, comps)


# ---------------------------------------------------------------------------
# coordinate helpers
# ---------------------------------------------------------------------------

def _trace_vector(R) -> np.ndarray:
    """Trace of each basis element ``E(r, c, t)``."""
    p = R.field.p
    k, m = R.k, R.pauli.T.order
    tr = np.trace(R.pauli.matrices, axis1=1, axis2=2) % p
    out = np.zeros((k, k, m), dtype=np.int64)
    out[np.arange(k), np.arange(k), :] = tr
    return out.reshape(-1)


def _degree_indices(R) -> dict:
    deg = R.degree_table.reshape(-1)
    els = R.group.elements
    return {els[gi]: np.nonzero(deg == gi)[0] for gi in np.unique(deg)}


def _phi_matrix(data: InvolutionData, idx: np.ndarray) -> np.ndarray:
    """Matrix of ``phi`` on the coordinates ``idx`` (closed under ``phi``)."""
    target, coef = data.phi_table
    pos = {int(i): j for j, i in enumerate(idx)}
    P = np.zeros((len(idx), len(idx)), dtype=np.int64)
    for j, i in enumerate(idx):
        P[pos[int(target[i])], j] = coef[i]
    return P


def _embed(vectors, idx, N) -> np.ndarray:
    V = np.asarray(vectors, dtype=np.int64).reshape(-1, len(idx))
    out = np.zeros((len(V), N), dtype=np.int64)
    out[:, idx] = V
    return out


def _solution_space(rows, idx, N, p) -> Subspace:
    """``{x supported on idx : rows @ x = 0}`` as a subspace of ``F^N``."""
    if len(rows) == 0:
        K = np.eye(len(idx), dtype=np.int64)
    else:
        K = nullspace(np.asarray(rows, dtype=np.int64) % p, p)
    return Subspace(_embed(K, idx, N), p, N)


def _unit(N, i, c=1):
    v = np.zeros(N, dtype=np.int64)
    v[i] = c
    return v


def _select_basis(vectors, p, label) -> np.ndarray:
    """Drop zeros, then keep a maximal independent subset in order."""
    V = np.asarray(vectors, dtype=np.int64).reshape(len(vectors), -1) % p if len(vectors) else \
        np.zeros((0, 0), dtype=np.int64)
    if not len(V):
        return V
    V = V[V.any(axis=1)]
    if not len(V):
        return V
    keep = independent_rows(V, p)
    if len(keep) < len(V):
        log.debug("%s: %d dependent formula elements dropped", label, len(V) - len(keep))
    return V[keep]


class _Tensors:
    """Coordinates of ``v (x) X_t (x) w`` in the ambient basis."""

    def __init__(self, data: InvolutionData):
        R = data.R
        self.data = data
        self.k = R.k
        self.m = R.pauli.T.order
        self.N = R.basis_size
        self.p = R.field.p
        self.D = R.pauli
        self.pi = [int(x) for x in data.partner_row]
        self.b = [int(x) for x in data.gram_value]
        self.y = [int(x) for x in data.block_t]

    def __call__(self, v: int, t: int, w: int) -> np.ndarray:
        D = self.D
        yw = self.y[w]
        u = int(D.sum_index[t, yw])
        c = self.b[w] * int(D.sigma[t, yw]) % self.p
        return _unit(self.N, (v * self.k + self.pi[w]) * self.m + u, c)


def _rows_by_coset(kappa: KappaMap) -> list:
    out, r = [], 0
    for v in kappa.values:
        out.append(list(range(r, r + v)))
        r += v
    return out


def _tau_or_identity(data: InvolutionData, a: int):
    table = data.R.kappa.table
    return data.tau[a] if a in data.tau else table.group.identity


def _formula_shift(table, a: int, g) -> int:
    """Index of the coset ``A - g``."""
    return table.coset_of[table.group.sub(table.cosets[a][0], g)]


# ---------------------------------------------------------------------------
# Type I
# ---------------------------------------------------------------------------

def _check_size(n, family):
    if n < 2:
        raise InvalidParameter(f"{family} needs n >= 2, got n = {n}")


def build_AI(G: FinAbGroup, T: Subgroup, beta, kappa, F=None) -> GradedLieAlgebra:
    F = F or field_for_group(G)
    D = pauli_for(T, beta, F)
    R = build_F(G, D, kappa)
    _check_size(R.n, "A-I")
    p = F.p
    N = R.basis_size
    tr = _trace_vector(R)
    e = G.identity
    coords, basis = {}, {}
    m = D.T.order
    for g, idx in _degree_indices(R).items():
        rows = tr[idx][None, :] if tr[idx].any() else []
        coords[g] = _solution_space(rows, idx, N, p)
        if g != e:
            basis[g] = np.array([_unit(N, i) for i in idx], dtype=np.int64)
            continue
        # anchor: first block row, t = e
        anchor = 0
        anchor_tr = int(tr[anchor])
        inv = pow(anchor_tr, -1, p)
        vecs = []
        for i in idx:
            if i == anchor:
                continue
            v = _unit(N, i)
            if tr[i]:
                v[anchor] = (-int(tr[i]) * inv) % p
            vecs.append(v)
        basis[g] = _select_basis(vecs, p, "A-I identity component")
    params = {"T": T, "beta": beta, "kappa": R.kappa}
    return GradedLieAlgebra("A-I", params, G, R, coords, basis)


# ---------------------------------------------------------------------------
# B and C
# ---------------------------------------------------------------------------

def _build_skew(family, G, T, beta, kappa, g0, F=None):
    delta = 1 if family == "B" else -1
    F = F or field_for_group(G)
    g0 = G.element(g0)
    if not T.is_elementary_2:
        raise NoInvolution("involutions need an elementary abelian 2-group T")
    D = pauli_for(T, beta, F)
    table = coset_table(G, T, g0)
    kap = KappaMap(table, kappa.values if isinstance(kappa, KappaMap) else kappa)
    n = kap.total * D.ell
    if family == "C" and n % 2:
        raise NoInvolution(f"a symplectic involution needs even n, got n = {n}")
    _check_size(n, family)
    if not exist_involution(G, T, beta, kap.values, delta, g0, F):
        raise NoInvolution(f"no involution of sign {delta} and degree {g0} for these multiplicities")
    R = build_F(G, D, kap)
    try:
        data = build_B_and_S(R, g0, mu_from_delta(table, g0, delta, D))
    except NoForm as exc:
        raise NoInvolution(str(exc)) from exc
    p = F.p
    N = R.basis_size
    eye_cache = {}
    coords = {}
    for g, idx in _degree_indices(R).items():
        P = _phi_matrix(data, idx)
        I = eye_cache.setdefault(len(idx), np.eye(len(idx), dtype=np.int64))
        coords[g] = _solution_space((P + I) % p, idx, N, p)
    basis = _skew_formula_basis(data, family)
    params = {"T": T, "beta": beta, "kappa": kap, "g0": g0, "delta": delta}
    return GradedLieAlgebra(family, params, G, R, coords, basis, involution=data)


def _skew_formula_basis(data: InvolutionData, family: str) -> dict:
    R = data.R
    G = R.group
    table = R.kappa.table
    D = R.pauli
    p = R.field.p
    M = _Tensors(data)
    rows = _rows_by_coset(R.kappa)
    sgn = -1 if family == "B" else 1
    out = {}
    for g in G.elements:
        vecs = []
        for a, va in enumerate(rows):
            if not va:
                continue
            a2 = _formula_shift(table, a, g)
            w_coset = table.partner[a2]
            if not rows[w_coset]:
                continue
            t = G.add(G.add(G.sub(g, table.gamma[a]), table.gamma[a2]), _tau_or_identity(data, a2))
            if t not in D.T:
                raise InvalidParameter("formula element lies outside the support")
            ti = D.index[t]
            c = sgn * D.sign_form[t] % p
            for v in va:
                for w in rows[w_coset]:
                    vecs.append((M(v, ti, w) + c * M(w, ti, v)) % p)
        if vecs:
            out[g] = _select_basis(vecs, p, f"{family} degree {g}")
    return out


def build_B(G, T, beta, kappa, g0, F=None) -> GradedLieAlgebra:
    return _build_skew("B", G, T, beta, kappa, g0, F)


def build_C(G, T, beta, kappa, g0, F=None) -> GradedLieAlgebra:
    return _build_skew("C", G, T, beta, kappa, g0, F)


# ---------------------------------------------------------------------------
# Type II
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class TypeIIContext:
    """Quotient data shared by the Type II constructions."""
    G: FinAbGroup
    H: Subgroup
    h: tuple
    Gbar: FinAbGroup
    proj: object
    Tbar: Subgroup
    chi: object


def type2_context(G: FinAbGroup, H: Subgroup, h, chi=None) -> TypeIIContext:
    ctx = _type2_context(G, H, G.element(h))
    if chi is None:
        return ctx
    if chi.group != G or chi(ctx.h) != Fraction(1, 2):
        raise InvalidParameter("chi must be a character of G with chi(h) = -1")
    return replace(ctx, chi=chi)


@lru_cache(maxsize=512)
def _type2_context(G, H, h) -> TypeIIContext:
    if not H.is_elementary_2:
        raise InvalidParameter("H must be an elementary abelian 2-group")
    if h not in H or h == G.identity:
        raise InvalidParameter("h must be a nonidentity element of H")
    N = subgroup_from_generators(G, [h])
    Gbar, proj = quotient(G, N)
    Tbar = proj.image(H)
    chi = solve_character(G, [(h, Fraction(1, 2))])
    return TypeIIContext(G, H, h, Gbar, proj, Tbar, chi)


def build_AII(G: FinAbGroup, H: Subgroup, h, beta, kappa, mu0, g0_bar, F=None,
              chi=None) -> GradedLieAlgebra:
    """``beta`` is a bicharacter on ``H/<h>`` (a subgroup of the quotient group).

    ``chi`` overrides the canonical character; it must satisfy ``chi(h) = -1``.
    """
    ctx = type2_context(G, H, h, chi)
    F = F or field_for_group(G)
    p = F.p
    Gbar, proj, Tbar, chi = ctx.Gbar, ctx.proj, ctx.Tbar, ctx.chi
    if beta.subgroup != Tbar:
        raise InvalidParameter("beta must be defined on H/<h>")
    g0_bar = Gbar.element(g0_bar)
    D = pauli_for(Tbar, beta, F)
    table = coset_table(Gbar, Tbar, g0_bar)
    kap = KappaMap(table, kappa.values if isinstance(kappa, KappaMap) else kappa)
    _check_size(kap.total * D.ell, "A-II")
    mu = mu_from_type2(table, g0_bar, mu0, chi, D, proj)
    R = build_F(Gbar, D, kap)
    try:
        data = build_B_and_S(R, g0_bar, mu)
    except NoForm as exc:
        raise RejectedParameters(f"no form for these parameters: {exc}") from exc
    compat = check_compat_38(data, chi, proj)
    if not compat.holds:
        raise RejectedParameters("phi^2 differs from chi^2 on some component",
                                 witness=compat.violations[:1])
    N = R.basis_size
    tr = _trace_vector(R)
    by_bar = _degree_indices(R)
    refinement, coords = {}, {}
    for g in G.elements:
        gb = proj(g)
        idx = by_bar.get(gb)
        if idx is None:
            continue
        P = _phi_matrix(data, idx)
        lam = F.root(chi(g))
        A = (P + lam * np.eye(len(idx), dtype=np.int64)) % p
        refinement[g] = _solution_space(A, idx, N, p)
        rows = np.vstack([A, tr[idx][None, :]]) if tr[idx].any() else A
        coords[g] = _solution_space(rows, idx, N, p)
    basis = _type2_formula_basis(data, ctx, int(mu0) % p, F)
    params = {"H": H, "h": ctx.h, "beta": beta, "kappa": kap, "mu0": int(mu0) % p,
              "g0_bar": g0_bar}
    return GradedLieAlgebra("A-II", params, G, R, coords, basis, involution=data, chi=chi,
                            proj=proj, refinement=refinement)


def _type2_formula_basis(data: InvolutionData, ctx: TypeIIContext, mu0: int, F) -> dict:
    R = data.R
    Gbar = R.group
    G = ctx.G
    table = R.kappa.table
    D = R.pauli
    p = F.p
    M = _Tensors(data)
    rows = _rows_by_coset(R.kappa)

    def chi2(x_bar):
        return F.root(2 * ctx.chi(ctx.proj.lift(x_bar)))

    def element(g, a, v, w):
        gb = ctx.proj(g)
        a2 = _formula_shift(table, a, gb)
        t = Gbar.add(Gbar.add(Gbar.sub(gb, table.gamma[a]), table.gamma[a2]),
                     _tau_or_identity(data, a2))
        ti = D.index[t]
        c = mu0 * D.sign_form[t] % p * F.root(ctx.chi(g)) % p * F.inv(chi2(table.cosets[a][0])) % p
        return (M(v, ti, w) - c * M(w, ti, v)) % p, t

    # anchor with B~(w0, v0) = 1
    w0 = next(r for r in range(R.k) if data.gram_value[r] == 1)
    v0 = int(data.partner_row[w0])
    coset_of_row = np.repeat(np.arange(len(table.cosets)), R.kappa.values)
    a0 = int(coset_of_row[v0])
    t0 = _tau_or_identity(data, a0)
    Bt = data.Btilde
    out = {}
    for g in G.elements:
        gb = ctx.proj(g)
        correct = gb == Gbar.identity
        if correct:
            E0, _ = element(g, a0, v0, w0)
        vecs = []
        for a, va in enumerate(rows):
            if not va:
                continue
            a2 = _formula_shift(table, a, gb)
            wc = table.partner[a2]
            if not rows[wc]:
                continue
            for v in va:
                for w in rows[wc]:
                    E, t = element(g, a, v, w)
                    if correct:
                        c = D.sign_form[t0] * D.sign_form[t] * int(Bt[w, v]) % p
                        E = (E - c * E0) % p
                    vecs.append(E)
        if vecs:
            out[g] = _select_basis(vecs, p, f"A-II degree {g}")
    return out


# ---------------------------------------------------------------------------
# verification
# ---------------------------------------------------------------------------

@dataclass
class LieReport:
    family: str
    dim: int
    expected_dim: int
    grading: GradingReport
    basis_ok: bool
    basis_problems: list = dc_field(default_factory=list)
    refinement_ok: bool = None           # A-II: R_gbar = R_g (+) R_gh for all g
    refinement_proper: bool = None
    refined_lie_ok: bool = None
    associative_violations: int = None   # A-II: violations of the associative axiom

    @property
    def ok(self) -> bool:
        good = (self.grading.ok and self.basis_ok and self.dim == self.expected_dim)
        if self.family == "A-II":
            good = good and self.refinement_ok and self.refined_lie_ok
            if self.refinement_proper:
                good = good and self.associative_violations > 0
        return bool(good)

    def as_dict(self):
        return {"family": self.family, "dim": self.dim, "expected_dim": self.expected_dim,
                "grading": self.grading.as_dict(), "basis_ok": self.basis_ok,
                "basis_problems": self.basis_problems, "refinement_ok": self.refinement_ok,
                "refinement_proper": self.refinement_proper,
                "refined_lie_ok": self.refined_lie_ok,
                "associative_violations": self.associative_violations, "ok": self.ok}


def _check_bases(L: GradedLieAlgebra) -> list:
    problems = []
    p = L.p
    for g in sorted(set(L.coords) | set(L.basis_coords)):
        S = L.coords.get(g)
        B = L.basis_coords.get(g, np.zeros((0, L.ambient.basis_size), dtype=np.int64))
        dim = S.dim if S is not None else 0
        if len(B) != dim:
            problems.append({"g": list(g), "problem": "cardinality", "basis": len(B), "dim": dim})
            continue
        if len(B) and rank(B, p) != len(B):
            problems.append({"g": list(g), "problem": "dependent"})
        if len(B) and not S.contains(B):
            problems.append({"g": list(g), "problem": "not homogeneous of this degree"})
    return problems


def verify_lie(L: GradedLieAlgebra) -> LieReport:
    """Bracket closure, direct sum, dimension, graded bases, and for ``A-II`` the refinement."""
    grading = verify_grading(L.decomposition(), "lie")
    problems = _check_bases(L)
    report = LieReport(L.family, L.dim, expected_dimension(L.family, L.n), grading,
                       not problems, problems)
    if L.family == "A-II":
        R = L.ambient
        proj = L.proj
        ok = True
        proper = False
        N = R.basis_size
        for gb, idx in _degree_indices(R).items():
            parts = [S for g, S in L.refinement.items() if proj(g) == gb]
            dims = [S.dim for S in parts]
            total = Subspace(np.vstack([S.basis for S in parts]), L.p, N) if parts else None
            if total is None or total.dim != len(idx) or sum(dims) != len(idx):
                ok = False
            if sum(1 for d in dims if d) > 1:
                proper = True
        report.refinement_ok = ok
        report.refinement_proper = proper
        refined = L.refined_decomposition()
        report.refined_lie_ok = verify_grading(refined, "lie").ok
        assoc = verify_grading(refined, "assoc")
        report.associative_violations = sum(v.count for v in assoc.violations)
    return report
