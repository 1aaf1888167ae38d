"""Bilinear forms, adjoint antiautomorphisms and involutions on graded matrix algebras.

The algebra must be built on the transversal paired for the degree ``g0``
of the form (see :func:`involution_algebra`).  The form on the multiplicity
space is always in a standard Gram shape:

* self-paired coset, symmetric restriction: identity;
* self-paired coset, skew restriction: ``[[0, I], [-I, 0]]``;
* partner cosets ``A`` (the lex-smaller one) and ``A'``: identity on
  ``A x A'`` and ``mu_A * identity`` on ``A' x A``.

The Gram matrix ``S`` of the form on ``F^n`` has the block ``X_tau(A)``
scaled by that Gram entry on self-paired cosets and a scalar multiple of the
identity elsewhere; the adjoint is ``phi(r) = S^-1 r^T S``.

Since ``S`` has exactly one nonzero block in each block row, ``phi`` maps
each basis element to a scalar multiple of a basis element.  That map is
tabulated from the Pauli structure constants (:meth:`InvolutionData.phi_table`),
which makes whole-sweep checks cheap; :meth:`InvolutionData.phi` is the
dense version.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache

import numpy as np

from .errors import (InternalError, InvalidParameter, NoForm, NotSelfPaired,
                     SplittingViolation, Unsupported)
from .field import mat_inv
from .graded import GradedMatrixAlgebra, KappaMap, build_F
from .groups import CosetTable, coset_table
from .pauli import PauliAlgebra

__all__ = [
    "MuMap",
    "InvolutionData",
    "InvolutionCheck",
    "CompatReport",
    "tau_of",
    "mu_from_delta",
    "mu_from_type2",
    "build_B_and_S",
    "check_involution",
    "check_compat_38",
    "exist_involution",
    "involution_algebra",
    "orthogonality_pattern",
    "check_involution_laws",
    "LawReport",
    "preserves_grading",
]


def _require_elementary(D: PauliAlgebra):
    if not D.T.is_elementary_2:
        raise Unsupported("forms of this kind need an elementary abelian 2-group T")


def tau_of(A, g0, table: CosetTable):
    """``g0 + 2 gamma(A)`` for a self-paired coset ``A`` (an index or a member list)."""
    G = table.group
    T = table.subgroup
    g0 = G.element(g0)
    a = A if isinstance(A, int) else table.coset_index(A[0])
    rep = table.gamma[a]
    tau = G.add(g0, G.scale(rep, 2))
    if tau not in T:
        raise NotSelfPaired(f"coset {table.cosets[a]} is not self-paired for g0 = {g0}")
    for other in table.cosets[a]:
        if G.add(g0, G.scale(other, 2)) != tau:
            raise Unsupported("tau depends on the representative; T is not elementary 2")
    return tau


class MuMap:
    """Scalars ``mu_A`` (field residues) with ``mu_A * mu_{-g0-A} = 1``."""

    __slots__ = ("table", "values", "origin", "p", "_plan")

    def __init__(self, table: CosetTable, values, p: int, origin: str = "explicit"):
        if not table.paired:
            raise InvalidParameter("mu needs a coset table in paired mode")
        values = tuple(int(v) % p for v in values)
        if len(values) != len(table.cosets):
            raise InvalidParameter("mu has the wrong number of values")
        for a, b in enumerate(table.partner):
            if values[a] * values[b] % p != 1:
                raise InvalidParameter(f"mu_A * mu_partner != 1 at coset {table.cosets[a]}")
        self.table = table
        self.values = values
        self.origin = origin
        self.p = p
        self._plan = None

    def __repr__(self):
        return f"MuMap({list(self.values)}, origin={self.origin!r})"

    def __eq__(self, other):
        return (isinstance(other, MuMap) and self.values == other.values
                and self.table.cosets == other.table.cosets and self.p == other.p)

    def __hash__(self):
        return hash((self.values, self.p))

    def __getitem__(self, a):
        return self.values[a]

    def normalized(self, kappa: KappaMap) -> "MuMap":
        """``mu_A = 1`` wherever ``kappa(A) = 0``."""
        vals = [v if k else 1 for v, k in zip(self.values, kappa.values)]
        return MuMap(self.table, vals, self.p, self.origin)

    def shifted(self, g) -> "MuMap":
        """``mu^g`` with ``mu^g(A + g) = mu(A)``, on the table paired for ``g0 - 2g``."""
        G = self.table.group
        g = G.element(g)
        new_g0 = G.sub(self.table.g0, G.scale(g, 2))
        table = coset_table(G, self.table.subgroup, new_g0)
        perm = self.table.shift_permutation(g)
        vals = [0] * len(self.values)
        for a, v in enumerate(self.values):
            vals[perm[a]] = v
        return MuMap(table, vals, self.p, self.origin)


@lru_cache(maxsize=4096)
def _mu_from_delta_cached(table: CosetTable, delta: int, D: PauliAlgebra) -> MuMap:
    p = D.field.p
    vals = []
    for a in range(len(table.cosets)):
        if table.partner[a] == a:
            vals.append(delta * D.sign_form[tau_of(a, table.g0, table)])
        else:
            vals.append(delta)
    return MuMap(table, vals, p, origin="delta")


def mu_from_delta(table: CosetTable, g0, delta: int, D: PauliAlgebra) -> MuMap:
    """``mu_A = delta * sign(tau(A))`` on self-paired cosets and ``delta`` elsewhere."""
    _require_elementary(D)
    if delta not in (1, -1):
        raise InvalidParameter("delta must be +1 or -1")
    G = table.group
    table = coset_table(G, table.subgroup, G.element(g0))
    return _mu_from_delta_cached(table, delta, D)


def _chi_sq(chi, proj, F, x_bar) -> int:
    """Field value of ``chi^2`` at an element of the quotient group."""
    return F.root(2 * chi(proj.lift(x_bar)))


def mu_from_type2(table: CosetTable, g0_bar, mu0: int, chi, D: PauliAlgebra, proj) -> MuMap:
    return _mu_from_type2(table, table.group.element(g0_bar), int(mu0) % D.field.p, chi, D, proj)


@lru_cache(maxsize=4096)
def _mu_from_type2(table, g0_bar, mu0, chi, D, proj) -> MuMap:
    """``mu_A = mu0 chi^-2(A) sign(tau(A))`` (self-paired) or ``mu0 chi^-2(A)``.

    ``table`` lives on the quotient ``G/<h>``, ``chi`` is a character of ``G``
    and ``proj`` the projection; ``chi^2`` is evaluated on any lift.
    """
    _require_elementary(D)
    F = D.field
    p = F.p
    Gb = table.group
    g0_bar = Gb.element(g0_bar)
    for t in D.T.elements:
        if _chi_sq(chi, proj, F, t) != 1:
            raise SplittingViolation(f"chi^2 is nontrivial at {t} in the support", witness=t)
    mu0 = int(mu0) % p
    if mu0 == 0 or mu0 * mu0 % p != F.inv(_chi_sq(chi, proj, F, g0_bar)):
        raise InvalidParameter(f"mu0 = {mu0} does not satisfy mu0^2 = chi^-2(g0)")
    table = coset_table(Gb, table.subgroup, g0_bar)
    vals = []
    for a, members in enumerate(table.cosets):
        v = mu0 * F.inv(_chi_sq(chi, proj, F, members[0])) % p
        if table.partner[a] == a:
            v = v * D.sign_form[tau_of(a, g0_bar, table)] % p
        vals.append(v)
    return MuMap(table, vals, p, origin="type2")


# ---------------------------------------------------------------------------
# the form and its adjoint
# ---------------------------------------------------------------------------

class InvolutionData:
    """Form data and the adjoint antiautomorphism of a graded matrix algebra.

    ``partner_row[r]`` is the block column of the single nonzero block of
    ``S`` in block row ``r``; that block is ``gram_value[r] * X_{block_t[r]}``.
    """

    def __init__(self, R, g0, mu, tau, partner_row, gram_value, block_t, lam, gram_inverse=None):
        self.R = R
        self.g0 = g0
        self.mu = mu
        self.tau = tau
        self.partner_row = partner_row
        self.gram_value = gram_value
        self.block_t = block_t
        self.lam = lam
        p = R.field.p
        if gram_inverse is None:
            gram_inverse = np.array([pow(int(x), -1, p) for x in gram_value], dtype=np.int64)
        self.gram_inverse = gram_inverse
        vals = {lam[a] for a, v in enumerate(R.kappa.values) if v}
        self.delta = (1 if vals == {1} else -1 if vals == {p - 1} else None)

    def __repr__(self):
        return f"InvolutionData(n={self.R.n}, g0={self.g0}, delta={self.delta})"

    @cached_property
    def Btilde(self) -> np.ndarray:
        k = self.R.k
        B = np.zeros((k, k), dtype=np.int64)
        B[np.arange(k), self.partner_row] = self.gram_value
        return B

    @cached_property
    def S(self) -> np.ndarray:
        R = self.R
        k, l, p = R.k, R.ell, R.field.p
        S = np.zeros((k, k, l, l), dtype=np.int64)
        blocks = self.gram_value[:, None, None] * R.pauli.matrices[self.block_t] % p
        S[np.arange(k), self.partner_row] = blocks
        return S.transpose(0, 2, 1, 3).reshape(R.n, R.n)

    @cached_property
    def S_inv(self) -> np.ndarray:
        return mat_inv(self.S, self.R.field.p)

    def phi(self, M) -> np.ndarray:
        """``S^-1 M^T S`` (works on stacks of matrices)."""
        p = self.R.field.p
        Mt = np.swapaxes(np.asarray(M, dtype=np.int64), -1, -2)
        return np.matmul(np.matmul(self.S_inv, Mt) % p, self.S) % p

    @cached_property
    def lambda_rows(self) -> np.ndarray:
        """``lambda`` of the coset of each block row."""
        vals = self.R.kappa.values
        return np.repeat(np.array(self.lam, dtype=np.int64), vals)

    @cached_property
    def phi_table(self):
        """``(target, coefficient)``: ``phi(E_i) = coefficient[i] * E_target[i]``.

        With ``S`` block ``(r, pi(r)) = b_r X_{y_r}`` one gets
        ``phi(E(r, c, t)) = (b_r / b_c) X_{y_c}^-1 X_t^T X_{y_r}`` in block
        ``(pi(c), pi(r))``; inverse, transpose and products of Pauli matrices
        come from the tables read off the realized matrices.
        """
        R = self.R
        D = R.pauli
        p = R.field.p
        k, m = R.k, D.T.order
        pi = self.partner_row
        y = self.block_t
        idx3, coef3 = D.adjoint_table
        # flat position of (y_c, t, y_r) in the (m, m, m) tables, laid out as [r, c, t]
        pos = (y * (m * m))[None, :, None] + (np.arange(m) * m)[None, None, :] + y[:, None, None]
        ratio = self.gram_value[:, None] * self.gram_inverse[None, :] % p
        coef = coef3.reshape(-1)[pos] * ratio[:, :, None] % p
        target = ((pi[None, :] * k + pi[:, None]) * m)[:, :, None] + idx3.reshape(-1)[pos]
        return target.reshape(-1), coef.reshape(-1)

    def phi_of_basis_dense(self) -> np.ndarray:
        return self.phi(self.R.basis_matrices)


def _kappa_values(kappa):
    if type(kappa) is tuple:
        return kappa
    return kappa.values if isinstance(kappa, KappaMap) else tuple(int(v) for v in kappa)


class _FormPlan:
    """Everything about the form that depends on ``mu`` and ``D`` but not on ``kappa``."""

    def __init__(self, mu: MuMap, D: PauliAlgebra):
        _require_elementary(D)
        table = mu.table
        p = mu.p
        partner = table.partner
        self.pairs = tuple((a, b) for a, b in enumerate(partner) if a < b)
        self.skew = tuple(a for a, b in enumerate(partner)
                          if a == b and mu.values[a] == p - 1)
        self.tau = {}
        lam = []
        coset_t = []
        e = D.index[table.group.identity]
        for a, b in enumerate(partner):
            if a == b:
                if mu.values[a] not in (1, p - 1):
                    raise InternalError("mu is not +-1 on a self-paired coset")
                t = tau_of(a, table.g0, table)
                self.tau[a] = t
                lam.append(mu.values[a] * D.sign_form[t] % p)
                coset_t.append(D.index[t])
            else:
                lam.append(mu.values[a])
                coset_t.append(e)
        self.lam = tuple(lam)
        self.coset_t = np.array(coset_t, dtype=np.int64)


def _form_plan(mu: MuMap, D: PauliAlgebra) -> _FormPlan:
    plans = mu._plan
    if plans is None:
        plans = mu._plan = {}
    hit = plans.get(id(D))
    if hit is not None and hit[0] is D:
        return hit[1]
    plan = _FormPlan(mu, D)
    plans[id(D)] = (D, plan)
    return plan


def build_B_and_S(R: GradedMatrixAlgebra, g0, mu: MuMap) -> InvolutionData:
    kappa = R.kappa
    if kappa is None:
        raise InvalidParameter("the algebra was not built from a multiplicity map")
    table = kappa.table
    G = table.group
    if table.g0 != g0:
        g0 = G.element(g0)
        if table.g0 != g0:
            raise InvalidParameter("the algebra must use the transversal paired for g0")
    if mu.table is not table and (mu.table.cosets != table.cosets or mu.table.g0 != g0):
        raise InvalidParameter("mu is defined for a different pairing")
    vals = kappa.values
    plan = _form_plan(mu, R.pauli)
    for a, b in plan.pairs:
        if vals[a] != vals[b]:
            raise NoForm("kappa differs on partner cosets", witness=(a, b))
    for a in plan.skew:
        if vals[a] & 1:
            raise NoForm("skew form forced on a self-paired coset of odd multiplicity",
                         witness=a)
    p = R.field.p
    partner = table.partner
    muv = mu.values
    starts = [0]
    for v in vals:
        starts.append(starts[-1] + v)
    # Python lists are faster than numpy for the few block rows involved
    partner_row = list(range(R.k))
    gram_value = [1] * R.k
    gram_inverse = [1] * R.k
    for a, v in enumerate(vals):
        if not v:
            continue
        b = partner[a]
        s = starts[a]
        if b == a:
            if muv[a] != 1:
                h = v // 2
                partner_row[s:s + h] = range(s + h, s + v)
                partner_row[s + h:s + v] = range(s, s + h)
                gram_value[s + h:s + v] = [p - 1] * h
                gram_inverse[s + h:s + v] = [p - 1] * h
        elif a < b:
            sb = starts[b]
            partner_row[s:s + v] = range(sb, sb + v)
            partner_row[sb:sb + v] = range(s, s + v)
            gram_value[sb:sb + v] = [muv[a]] * v
            gram_inverse[sb:sb + v] = [muv[b]] * v
    partner_row = np.array(partner_row, dtype=np.int64)
    gram_value = np.array(gram_value, dtype=np.int64)
    gram_inverse = np.array(gram_inverse, dtype=np.int64)
    block_t = np.repeat(plan.coset_t, vals)
    return InvolutionData(R, g0, mu, plan.tau, partner_row, gram_value, block_t, plan.lam,
                          gram_inverse)


def involution_algebra(G, D: PauliAlgebra, kappa, g0) -> GradedMatrixAlgebra:
    """:func:`build_F` on the transversal paired for ``g0``."""
    table = coset_table(G, D.T, g0)
    return build_F(G, D, KappaMap(table, _kappa_values(kappa)))


# ---------------------------------------------------------------------------
# checks
# ---------------------------------------------------------------------------

@dataclass
class InvolutionCheck:
    kind: str                 # "involution" or "antiautomorphism"
    delta: int = None
    lam: tuple = None
    symmetric: bool = None
    skew: bool = None


def check_involution(data: InvolutionData, dense: bool = False) -> InvolutionCheck:
    """Classify ``phi``: an involution of sign ``delta``, or ``phi^2 = Lambda^-1 r Lambda``.

    The default works from :attr:`InvolutionData.phi_table`; ``dense=True``
    applies ``S^-1 r^T S`` to every basis matrix instead.
    """
    R = data.R
    p = R.field.p
    if dense:
        B = R.basis_matrices
        P2 = data.phi(data.phi(B))
        is_id = np.array_equal(P2, B)
    else:
        target, coef = data.phi_table
        same = np.array_equal(target[target], np.arange(len(target)))
        c2 = coef * coef[target] % p
        is_id = same and bool((c2 == 1).all())
    if is_id:
        S = data.S
        sym = np.array_equal(S.T, S)
        skew = np.array_equal(S.T, (-S) % p)
        if sym == skew:
            raise InternalError("involutive adjoint with a form that is neither symmetric nor skew")
        return InvolutionCheck("involution", 1 if sym else -1, data.lam, sym, skew)
    # expected factor lambda_r^-1 lambda_c on E(r, c, t)
    lam_r = data.lambda_rows
    lam_inv = np.array([pow(int(x), -1, p) for x in lam_r], dtype=np.int64)
    factor = np.broadcast_to((lam_inv[:, None] * lam_r[None, :] % p)[:, :, None],
                             (R.k, R.k, R.pauli.T.order)).reshape(-1)
    if dense:
        eq17 = np.array_equal(P2, factor[:, None, None] * B % p)
    else:
        eq17 = same and np.array_equal(c2, factor)
    if eq17:
        return InvolutionCheck("antiautomorphism", None, data.lam, None, None)
    raise InternalError("phi^2 is neither the identity nor conjugation by the lambda map")


def orthogonality_pattern(data: InvolutionData) -> bool:
    """Block ``(A, A')`` of ``S`` vanishes unless ``A'`` is the partner of ``A``."""
    R = data.R
    table = R.kappa.table
    l = R.ell
    rc = np.repeat(np.arange(len(table.cosets)), R.kappa.values)
    partner = np.asarray(table.partner)
    nz = (data.S.reshape(R.k, l, R.k, l) != 0).any(axis=(1, 3))
    rows, cols = np.nonzero(nz)
    return bool((rc[cols] == partner[rc[rows]]).all()) and bool(nz.any(axis=1).all())


def preserves_grading(data: InvolutionData) -> bool:
    """``phi(R_g) = R_g``: each basis element goes to a nonzero multiple of one of equal degree."""
    target, coef = data.phi_table
    deg = data.R.degree_table.reshape(-1)
    return bool((coef != 0).all()) and np.array_equal(deg[target], deg)


@dataclass
class LawReport:
    """Per-item results of :func:`check_involution_laws`."""
    involutive: np.ndarray      # phi^2 = id on every basis element
    sign: np.ndarray            # +1 symmetric S, -1 skew S, 0 neither
    graded: np.ndarray          # phi(R_g) = R_g for all g
    orthogonal: np.ndarray      # block pattern of S follows the coset pairing

    def ok(self, deltas) -> np.ndarray:
        d = np.asarray(deltas)
        return self.involutive & (self.sign == d) & self.graded & self.orthogonal


def check_involution_laws(datas) -> LawReport:
    """Involution laws for many forms at once.

    All items must share the Pauli algebra, the coset table and the number
    of block rows; they may differ in ``kappa`` and ``mu``.  The computation
    is the one behind :attr:`InvolutionData.phi_table`, batched.
    """
    first = datas[0].R
    D = first.pauli
    G = first.group
    table = first.kappa.table
    p = first.field.p
    k, m, l = first.k, D.T.order, first.ell
    for d in datas:
        if d.R.pauli is not D or d.R.k != k or d.R.kappa.table is not table:
            raise InvalidParameter("batched checks need a common Pauli algebra, table and size")
    B = len(datas)
    PI = np.stack([d.partner_row for d in datas])
    GV = np.stack([d.gram_value for d in datas])
    GI = np.stack([d.gram_inverse for d in datas])
    Y = np.stack([d.block_t for d in datas])
    H = np.stack([d.R.row_degree for d in datas])
    ncos = len(table.cosets)
    RC = np.stack([np.repeat(np.arange(ncos), d.R.kappa.values) for d in datas])
    idx3, coef3 = D.adjoint_table
    pos = ((Y * (m * m))[:, None, :, None] + (np.arange(m) * m)[None, None, None, :]
           + Y[:, :, None, None])
    ratio = GV[:, :, None] * GI[:, None, :] % p
    coef = (coef3.reshape(-1)[pos] * ratio[..., None] % p).reshape(B, -1)
    target = (((PI[:, None, :] * k + PI[:, :, None]) * m)[..., None]
              + idx3.reshape(-1)[pos]).reshape(B, -1)
    N = k * k * m
    twice = np.take_along_axis(target, target, axis=1)
    c2 = coef * np.take_along_axis(coef, target, axis=1) % p
    involutive = (twice == np.arange(N)).all(axis=1) & (c2 == 1).all(axis=1)
    add, neg = G.add_table, G.neg_table
    deg = add[add[H[:, :, None, None], D.group_index[None, None, None, :]],
              neg[H][:, None, :, None]].reshape(B, -1)
    graded = ((np.take_along_axis(deg, target, axis=1) == deg).all(axis=1)
              & (coef != 0).all(axis=1))
    S4 = np.zeros((B, k, k, l, l), dtype=np.int64)
    bi = np.arange(B)[:, None]
    ri = np.arange(k)[None, :]
    S4[bi, ri, PI] = GV[:, :, None, None] * D.matrices[Y] % p
    S = S4.transpose(0, 1, 3, 2, 4).reshape(B, k * l, k * l)
    St = S.transpose(0, 2, 1)
    sym = (St == S).all(axis=(1, 2))
    skew = (St == (-S) % p).all(axis=(1, 2))
    sign = np.where(sym & ~skew, 1, np.where(skew & ~sym, -1, 0))
    nz = (S4 != 0).any(axis=(3, 4))
    partner = np.asarray(table.partner)
    want = RC[:, None, :] == partner[RC][:, :, None]
    orthogonal = (~nz | want).all(axis=(1, 2)) & nz.any(axis=2).all(axis=1)
    return LawReport(involutive, sign, graded, orthogonal)


@dataclass
class CompatReport:
    holds: bool                 # phi^2 = chi^2(deg) on every basis element
    splitting: bool             # chi^2 trivial on the support of D
    mu0: int                    # the constant lambda_A chi^2(A) when it exists, else None
    criterion: bool             # splitting and mu of the required shape
    violations: list

    @property
    def agree(self) -> bool:
        return self.holds == self.criterion


def check_compat_38(data: InvolutionData, chi, proj) -> CompatReport:
    """Compare ``phi^2 = chi^2(g) id`` on each component with the splitting criterion."""
    R = data.R
    F = R.field
    p = F.p
    Gb = R.group
    target, coef = data.phi_table
    c2 = coef * coef[target] % p
    same = np.array_equal(target[target], np.arange(len(target)))
    chi2 = np.array([_chi_sq(chi, proj, F, x) for x in Gb.elements], dtype=np.int64)
    deg = R.degree_table.reshape(-1)
    bad = np.nonzero(c2 != chi2[deg])[0] if same else np.arange(len(deg))
    els = Gb.elements
    violations = sorted({(els[deg[i]], int(i)) for i in bad}, key=lambda v: v[1])
    seen = set()
    first = []
    for g, i in violations:
        if g not in seen:
            seen.add(g)
            first.append((g, i))
    split = all(chi2[Gb.index[t]] == 1 for t in R.pauli.T.elements)
    mu0 = None
    ok = split
    table = R.kappa.table
    for a in R.kappa.support:
        val = data.lam[a] * chi2[Gb.index[table.cosets[a][0]]] % p
        if mu0 is None:
            mu0 = int(val)
        elif val != mu0:
            ok = False
    return CompatReport(not len(bad), split, mu0 if ok else None, ok, first)


# ---------------------------------------------------------------------------
# existence
# ---------------------------------------------------------------------------

@lru_cache(maxsize=4096)
def _existence_plan(G, T, beta, g0, F, delta) -> tuple:
    """Partner pairs and the self-paired cosets whose sign differs from ``delta``.

    ``None`` when ``T`` is not an elementary 2-group.
    """
    from .field import field_for_group
    from .pauli import pauli_for

    if not T.is_elementary_2:
        return None
    g0 = G.element(g0)

    D = pauli_for(T, beta, F if F is not None else field_for_group(G))
    table = coset_table(G, T, g0)
    pairs = []
    wrong_sign = []
    for a, b in enumerate(table.partner):
        if a < b:
            pairs.append((a, b))
        elif a == b and D.sign_form[tau_of(a, g0, table)] != delta:
            wrong_sign.append(a)
    return tuple(pairs), tuple(wrong_sign)


_EXIST_FAST: dict = {}


def exist_involution(G, T, beta, kappa, delta: int, g0, F=None) -> bool:
    """Whether some involution of sign ``delta`` and degree ``g0`` exists.

    Requires ``kappa(A) = kappa(-g0 - A)`` for every coset and
    ``sign(g0 + 2a) = delta`` on self-paired cosets of odd multiplicity.
    """
    key = (id(G), id(T), id(beta), id(F), g0, delta)
    try:
        hit = _EXIST_FAST.get(key)
    except TypeError:
        # unhashable g0, e.g. a list
        key = hit = None
        g0 = G.element(g0)
    if hit is not None and hit[0] is G and hit[1] is T and hit[2] is beta and hit[3] is F:
        plan = hit[4]
    else:
        plan = _existence_plan(G, T, beta, g0, F, delta)
        if key is not None:
            if len(_EXIST_FAST) > 4096:
                _EXIST_FAST.clear()
            # the stored objects keep their ids from being reused
            _EXIST_FAST[key] = (G, T, beta, F, plan)
    if plan is None:
        return False
    pairs, wrong_sign = plan
    vals = kappa if type(kappa) is tuple else _kappa_values(kappa)
    for a, b in pairs:
        if vals[a] != vals[b]:
            return False
    for a in wrong_sign:
        if vals[a] & 1:
            return False
    return True
