"""Equivalence of parameter tuples, with constructive witnesses.

A decision quantifies over the shifts ``g`` of the grading group: tuples are
equivalent when some ``g`` carries one parameter set onto the other.  A
positive verdict names the first such ``g`` (in the group's element order)
and can be checked by :func:`verify_witness`, which realizes the shift as a
block-monomial conjugation and compares the homogeneous components of the
two algebras as subspaces.  A negative verdict is an exhaustion certificate:
every ``g`` was tried.

The witnesses only show the direction "equivalent parameters give
isomorphic gradings".  Nothing here claims anything about isomorphisms of
small algebras that the parameter criteria do not see.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction
from dataclasses import dataclass, field as dc_field, replace
from functools import lru_cache

import numpy as np

from .census import division_data, elementary_2_subgroups, kappa_vectors
from .errors import GradalgError, InvalidParameter, VerificationFailure
from .field import field_for_group, mat_inv, RootField, Subspace
from .forms import (MuMap, build_B_and_S, exist_involution, involution_algebra, mu_from_delta)
from .graded import (Fingerprint, GradedDecomposition, KappaMap, build_F, conjugate_components,
                     fingerprint)
from .groups import FinAbGroup, Subgroup, coset_table
from .lie import build_AI, build_AII, build_B, build_C, type2_context
from .pauli import intertwiner, pauli_for

__all__ = [
    "KINDS",
    "ParamTuple",
    "IsoDecision",
    "decide",
    "decide_assoc",
    "decide_antiauto",
    "decide_involution",
    "decide_sl",
    "decide_so_sp",
    "transform",
    "reverse",
    "realize",
    "verify_witness",
    "kind_fingerprint",
    "fingerprint_compare",
    "sample_tuple",
    "enumerate_tuples",
    "census",
    "Census",
    "tuple_size",
]

KINDS = ("assoc", "assoc-antiauto", "assoc-involution", "sl-I", "sl-II", "so", "sp")


@dataclass(frozen=True)
class ParamTuple:
    """Parameters of one model grading.

    ``kappa`` lists multiplicities by coset (cosets sorted by their
    lex-minimal member).  For ``sl-II`` the cosets are those of ``H/<h>``
    in ``G/<h>``, ``beta`` lives on ``H/<h>`` and ``g0`` is ``g0_bar``.
    ``mu`` is only used by ``assoc-antiauto``.
    """
    kind: str
    G: FinAbGroup
    T: Subgroup
    beta: object
    kappa: tuple
    g0: tuple = None
    delta: int = None
    mu: tuple = None
    H: Subgroup = None
    h: tuple = None
    mu0: int = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InvalidParameter(f"unknown kind {self.kind!r}")
        object.__setattr__(self, "kappa", tuple(int(v) for v in self.kappa))
        if self.g0 is not None:
            grp = self.quotient_group if self.kind == "sl-II" else self.G
            object.__setattr__(self, "g0", grp.element(self.g0))
        if self.mu is not None:
            object.__setattr__(self, "mu", tuple(int(v) for v in self.mu))

    @property
    def quotient_group(self) -> FinAbGroup:
        return type2_context(self.G, self.H, self.h).Gbar

    @property
    def grading_group(self) -> FinAbGroup:
        """The group indexing the cosets of ``kappa``."""
        return self.quotient_group if self.kind == "sl-II" else self.G

    def table(self):
        return coset_table(self.grading_group, self.T, self.g0)

    def as_dict(self) -> dict:
        out = {"kind": self.kind, "G": list(self.G.moduli), "T": [list(t) for t in self.T.elements],
               "beta": {"gens": [list(g) for g in self.beta.gens],
                        "gram": [[str(q) for q in row] for row in self.beta.gram]},
               "kappa": list(self.kappa)}
        for key in ("g0", "h"):
            v = getattr(self, key)
            if v is not None:
                out[key] = list(v)
        for key in ("delta", "mu0"):
            v = getattr(self, key)
            if v is not None:
                out[key] = v
        if self.mu is not None:
            out["mu"] = list(self.mu)
        if self.H is not None:
            out["H"] = [list(t) for t in self.H.elements]
        return out


@dataclass
class IsoDecision:
    verdict: str                       # "equivalent" or "inequivalent"
    g: tuple = None
    flavor: str = None                 # "shift" or "shift-with-reversal"
    checked: int = 0                   # number of shifts examined
    reason: str = None                 # why no shift was tried at all
    fingerprint_delta: object = None

    @property
    def equivalent(self) -> bool:
        return self.verdict == "equivalent"

    def as_dict(self) -> dict:
        out = {"verdict": self.verdict}
        if self.equivalent:
            out["witness"] = {"g": list(self.g), "flavor": self.flavor}
        else:
            ref = {"checked_g_count": self.checked}
            if self.reason:
                ref["reason"] = self.reason
            if self.fingerprint_delta is not None:
                ref["fingerprint_delta"] = self.fingerprint_delta
            out["refutation"] = ref
        return out


def _no(reason=None, checked=0):
    return IsoDecision("inequivalent", checked=checked, reason=reason)


def _shift_values(table, values, g):
    perm = table.shift_permutation(g)
    out = [0] * len(values)
    for a, v in enumerate(values):
        out[perm[a]] = v
    return tuple(out)


def _reflect_values(table, values):
    perm = table.negation_permutation
    out = [0] * len(values)
    for a, v in enumerate(values):
        out[perm[a]] = v
    return tuple(out)


def _mu_on_support(mu, kappa):
    return tuple(m if k else None for m, k in zip(mu, kappa))


def _same_G(p, q):
    if p.G != q.G:
        raise InvalidParameter("tuples live on different groups")


# ---------------------------------------------------------------------------
# deciders
# ---------------------------------------------------------------------------

def decide_assoc(p: ParamTuple, q: ParamTuple) -> IsoDecision:
    _same_G(p, q)
    if p.T != q.T or p.beta != q.beta:
        return _no("division gradings differ")
    table = coset_table(p.G, p.T)
    for i, g in enumerate(p.G.elements):
        if _shift_values(table, p.kappa, g) == q.kappa:
            return IsoDecision("equivalent", g, "shift", i + 1)
    return _no(checked=p.G.order)


def _shift_search(p, q, extra):
    """First ``g`` with ``g0' = g0 - 2g``, ``kappa' = kappa^g`` and ``extra(g)``."""
    G = p.G
    table = coset_table(G, p.T)
    for i, g in enumerate(G.elements):
        if G.sub(p.g0, G.scale(g, 2)) != q.g0:
            continue
        if _shift_values(table, p.kappa, g) != q.kappa:
            continue
        if extra is None or extra(g):
            return IsoDecision("equivalent", g, "shift", i + 1)
    return _no(checked=G.order)


def decide_antiauto(p: ParamTuple, q: ParamTuple) -> IsoDecision:
    _same_G(p, q)
    if p.T != q.T or p.beta != q.beta:
        return _no("division gradings differ")
    table = coset_table(p.G, p.T)

    def mu_matches(g):
        return (_mu_on_support(_shift_values(table, p.mu, g), q.kappa)
                == _mu_on_support(q.mu, q.kappa))

    return _shift_search(p, q, mu_matches)


def decide_involution(p: ParamTuple, q: ParamTuple) -> IsoDecision:
    _same_G(p, q)
    if p.T != q.T or p.beta != q.beta:
        return _no("division gradings differ")
    if p.delta != q.delta:
        return _no("signs differ")
    return _shift_search(p, q, None)


def decide_sl(p: ParamTuple, q: ParamTuple, F: RootField = None) -> IsoDecision:
    _same_G(p, q)
    if p.kind != q.kind:
        return _no("Type I and Type II never match")
    G = p.G
    if p.kind == "sl-I":
        table = coset_table(G, p.T)
        straight = p.T == q.T and p.beta == q.beta
        rev = p.T == q.T and p.beta.inverse() == q.beta
        if not (straight or rev):
            return _no("division gradings differ")
        reflected = _reflect_values(table, p.kappa)
        for i, g in enumerate(G.elements):
            if straight and _shift_values(table, p.kappa, g) == q.kappa:
                return IsoDecision("equivalent", g, "shift", i + 1)
            if rev and _shift_values(table, reflected, g) == q.kappa:
                return IsoDecision("equivalent", g, "shift-with-reversal", i + 1)
        return _no(checked=G.order)
    if p.H != q.H or p.h != q.h or p.beta != q.beta:
        return _no("H, h or beta differ")
    ctx = type2_context(G, p.H, p.h)
    Gb = ctx.Gbar
    F = F or field_for_group(G)
    table = coset_table(Gb, ctx.Tbar)
    for i, g in enumerate(G.elements):
        gb = ctx.proj(g)
        if Gb.sub(p.g0, Gb.scale(gb, 2)) != q.g0:
            continue
        if _shift_values(table, p.kappa, gb) != q.kappa:
            continue
        if p.mu0 * F.root(2 * ctx.chi(g)) % F.p != q.mu0 % F.p:
            continue
        return IsoDecision("equivalent", g, "shift", i + 1)
    return _no(checked=G.order)


def decide_so_sp(p: ParamTuple, q: ParamTuple) -> IsoDecision:
    _same_G(p, q)
    if p.kind != q.kind:
        return _no("orthogonal and symplectic families never match")
    if p.T != q.T or p.beta != q.beta:
        return _no("division gradings differ")
    return _shift_search(p, q, None)


_DECIDERS = {"assoc": decide_assoc, "assoc-antiauto": decide_antiauto,
             "assoc-involution": decide_involution, "sl-I": decide_sl, "sl-II": decide_sl,
             "so": decide_so_sp, "sp": decide_so_sp}


def decide(p: ParamTuple, q: ParamTuple, F: RootField = None) -> IsoDecision:
    """Dispatch on the kind; ``F`` only matters for the scalars of ``sl-II``."""
    if p.kind == "sl-II" or q.kind == "sl-II":
        return decide_sl(p, q, F) if {p.kind, q.kind} <= {"sl-I", "sl-II"} else _no("different kinds")
    if p.kind != q.kind:
        lie = {"sl-I", "sl-II"}
        if p.kind in lie and q.kind in lie:
            return decide_sl(p, q)
        if {p.kind, q.kind} == {"so", "sp"}:
            return decide_so_sp(p, q)
        return _no("different kinds")
    return _DECIDERS[p.kind](p, q)


# ---------------------------------------------------------------------------
# transformations
# ---------------------------------------------------------------------------

def transform(p: ParamTuple, g, F: RootField = None) -> ParamTuple:
    """The tuple obtained from ``p`` by the shift ``g``."""
    G = p.G
    g = G.element(g)
    if p.kind == "sl-II":
        ctx = type2_context(G, p.H, p.h)
        Gb = ctx.Gbar
        gb = ctx.proj(g)
        F = F or field_for_group(G)
        table = coset_table(Gb, ctx.Tbar)
        return replace(p, kappa=_shift_values(table, p.kappa, gb),
                       g0=Gb.sub(p.g0, Gb.scale(gb, 2)),
                       mu0=p.mu0 * F.root(2 * ctx.chi(g)) % F.p)
    table = coset_table(G, p.T)
    kappa = _shift_values(table, p.kappa, g)
    if p.kind in ("assoc", "sl-I"):
        return replace(p, kappa=kappa)
    out = replace(p, kappa=kappa, g0=G.sub(p.g0, G.scale(g, 2)))
    if p.mu is not None:
        out = replace(out, mu=_shift_values(table, p.mu, g))
    return out


def reverse(p: ParamTuple) -> ParamTuple:
    """``(beta, kappa) -> (beta^-1, kappa~)`` for Type I tuples."""
    if p.kind != "sl-I":
        raise InvalidParameter("reversal applies to Type I tuples only")
    table = coset_table(p.G, p.T)
    return replace(p, beta=p.beta.inverse(), kappa=_reflect_values(table, p.kappa))


# ---------------------------------------------------------------------------
# realization and witnesses
# ---------------------------------------------------------------------------

@dataclass
class Realized:
    tuple: ParamTuple
    R: object                      # the graded matrix algebra
    data: object = None            # InvolutionData when a form is present
    lie: object = None             # GradedLieAlgebra for the Lie kinds
    shift_group: FinAbGroup = None

    @property
    def decomposition(self) -> GradedDecomposition:
        if self.lie is not None:
            return self.lie.decomposition()
        return self.R.decomposition()


def realize(p: ParamTuple, F: RootField = None) -> Realized:
    F = F or field_for_group(p.G)
    G = p.G
    if p.kind == "assoc":
        R = build_F(G, pauli_for(p.T, p.beta, F), p.kappa)
        return Realized(p, R, shift_group=G)
    if p.kind in ("assoc-antiauto", "assoc-involution"):
        D = pauli_for(p.T, p.beta, F)
        R = involution_algebra(G, D, p.kappa, p.g0)
        table = R.kappa.table
        if p.kind == "assoc-antiauto":
            mu = MuMap(table, p.mu, F.p, origin="explicit")
        else:
            mu = mu_from_delta(table, p.g0, p.delta, D)
        return Realized(p, R, build_B_and_S(R, p.g0, mu), shift_group=G)
    if p.kind == "sl-I":
        L = build_AI(G, p.T, p.beta, p.kappa, F)
        return Realized(p, L.ambient, lie=L, shift_group=G)
    if p.kind == "sl-II":
        L = build_AII(G, p.H, p.h, p.beta, p.kappa, p.mu0, p.g0, F)
        return Realized(p, L.ambient, L.involution, L, shift_group=L.ambient.group)
    build = build_B if p.kind == "so" else build_C
    L = build(G, p.T, p.beta, p.kappa, p.g0, F)
    return Realized(p, L.ambient, L.involution, L, shift_group=G)


def _row_offsets(kappa: KappaMap) -> list:
    out, r = [], 0
    for v in kappa.values:
        out.append(r)
        r += v
    return out


@lru_cache(maxsize=64)
def _transpose_intertwiner(D, D2):
    """``P`` with ``P X_t^T P^-1`` proportional to ``D2.X[t]`` for every ``t``."""
    gens = [t for t, _ in D.T.basis]
    source = {t: D.X[t].T.copy() for t in gens}
    target = {t: D2.X[t] for t in gens}
    return intertwiner(source, target, gens, D.field)


def _conjugator(R, R2, g, reverse_rows=False) -> np.ndarray:
    """Block-monomial ``u`` taking the rows of coset ``A`` to those of ``A + g``.

    With ``reverse_rows`` the rows of ``A`` go to ``-A + g`` and every block
    carries the intertwiner of the transposed Pauli family.
    """
    Gr = R.group
    t1, t2 = R.kappa.table, R2.kappa.table
    D2 = R2.pauli
    off2 = _row_offsets(R2.kappa)
    l, p = R.ell, R.field.p
    P = _transpose_intertwiner(R.pauli, D2) if reverse_rows else None
    u = np.zeros((R2.n, R.n), dtype=np.int64)
    r = 0
    for a, cnt in enumerate(R.kappa.values):
        rep = t1.cosets[a][0]
        gam = Gr.neg(t1.gamma[a]) if reverse_rows else t1.gamma[a]
        a2 = t2.coset_of[Gr.add(Gr.neg(rep) if reverse_rows else rep, g)]
        if R2.kappa.values[a2] != cnt:
            raise VerificationFailure("multiplicities do not match under the shift",
                                      witness=(a, a2))
        s = Gr.sub(Gr.add(gam, g), t2.gamma[a2])
        if s not in D2.T:
            raise VerificationFailure("shift leaves the support of the division part", witness=s)
        blk = D2.X[s] if P is None else D2.X[s] @ P % p
        for i in range(cnt):
            rr = off2[a2] + i
            u[rr * l:(rr + 1) * l, (r + i) * l:(r + i + 1) * l] = blk
        r += cnt
    return u % p


def _form_scalars(u, data, data2, F) -> np.ndarray:
    """Rescale the block rows of ``u`` so that ``u^T S' u = c S``; returns the new ``u``."""
    p = F.p
    R = data.R
    l, k = R.ell, R.k
    M = u.T @ data2.S % p @ u % p
    S = data.S
    x = []
    for r in range(k):
        c = int(data.partner_row[r])
        blk_S = S[r * l:(r + 1) * l, c * l:(c + 1) * l]
        blk_M = M[r * l:(r + 1) * l, c * l:(c + 1) * l]
        i, j = np.argwhere(blk_S != 0)[0]
        x.append(int(blk_M[i, j]) * pow(int(blk_S[i, j]), -1, p) % p)
    scale = [None] * k
    c_total = None
    for r in range(k):
        if scale[r] is not None:
            continue
        q = int(data.partner_row[r])
        if q == r:
            if c_total is None:
                c_total, scale[r] = x[r], 1
            else:
                root = F.sqrt(c_total * pow(x[r], -1, p) % p)
                if root is None:
                    raise VerificationFailure("no rescaling makes the forms proportional",
                                              witness=r)
                scale[r] = root
        else:
            if c_total is None:
                c_total = 1
            scale[r] = 1
            scale[q] = c_total * pow(x[r], -1, p) % p
    cols = np.repeat(np.array(scale, dtype=np.int64), l)
    return u * cols[None, :] % p


def _equal_components(a: dict, b: dict, n: int, p: int) -> bool:
    keys = set(a) | set(b)
    zero = Subspace.zero(n * n, p)
    return all(a.get(g, zero) == b.get(g, zero) for g in keys)


def verify_witness(p: ParamTuple, q: ParamTuple, decision: IsoDecision, F: RootField = None,
                   raise_on_failure: bool = True) -> bool:
    """Rebuild both algebras and check the conjugation named by ``decision``."""
    if not decision.equivalent:
        raise InvalidParameter("only equivalent verdicts carry a witness")
    F = F or field_for_group(p.G)
    A, B = realize(p, F), realize(q, F)
    g = decision.g
    if p.kind == "sl-II":
        g = type2_context(p.G, p.H, p.h).proj(g)
    reverse_rows = decision.flavor == "shift-with-reversal"
    try:
        u = _conjugator(A.R, B.R, g, reverse_rows)
        if A.data is not None:
            u = _form_scalars(u, A.data, B.data, F)
            M = u.T @ B.data.S % F.p @ u % F.p
            nz = np.argwhere(A.data.S != 0)[0]
            c = int(M[tuple(nz)]) * pow(int(A.data.S[tuple(nz)]), -1, F.p) % F.p
            if not np.array_equal(M, c * A.data.S % F.p):
                raise VerificationFailure("u^T S' u is not a multiple of S")
        pre = (lambda X: (-np.swapaxes(X, -1, -2)) % F.p) if reverse_rows else None
        dec_a, dec_b = A.decomposition, B.decomposition
        image = conjugate_components(u, dec_a, F.p, pre)
        if not _equal_components(image, dec_b.components, dec_a.n, F.p):
            raise VerificationFailure("conjugation does not match the homogeneous components")
        if A.lie is not None and A.data is not None:
            # the form-compatible u also matches the ambient grading
            amb = conjugate_components(u, A.R.decomposition(), F.p)
            if not _equal_components(amb, B.R.decomposition().components, dec_a.n, F.p):
                raise VerificationFailure("conjugation does not match the ambient grading")
    except VerificationFailure:
        if raise_on_failure:
            raise
        return False
    return True


# ---------------------------------------------------------------------------
# fingerprints
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class KindFingerprint:
    kind: str
    grading: Fingerprint
    skew_dims: tuple = ()        # involution kinds: dims of the skew elements by degree

    def as_dict(self):
        return {"kind": self.kind, "grading": self.grading.as_dict(),
                "skew_dims": [[list(g), d] for g, d in self.skew_dims]}


def kind_fingerprint(p: ParamTuple, F: RootField = None, realized: Realized = None) -> KindFingerprint:
    X = realized or realize(p, F)
    fam = p.kind if p.kind not in ("sl-I", "sl-II") else "sl"
    skew = ()
    if p.kind == "assoc-involution":
        from .lie import _degree_indices, _phi_matrix, _solution_space
        R, data = X.R, X.data
        pp = R.field.p
        dims = []
        for g, idx in sorted(_degree_indices(R).items()):
            P = _phi_matrix(data, idx)
            S = _solution_space((P + np.eye(len(idx), dtype=np.int64)) % pp, idx,
                                R.basis_size, pp)
            dims.append((g, S.dim))
        skew = tuple(dims)
    if p.kind == "assoc-antiauto":
        fam = "assoc-antiauto"
    return KindFingerprint(fam, fingerprint(X.lie if X.lie is not None else X.R), skew)


def fingerprint_compare(a, b):
    """``None`` when equal, else ``(field, value_a, value_b)`` for the first discrepancy."""
    if isinstance(a, KindFingerprint) and isinstance(b, KindFingerprint):
        if a.kind != b.kind:
            return ("kind", a.kind, b.kind)
        d = fingerprint_compare(a.grading, b.grading)
        if d is not None:
            return d
        if a.skew_dims != b.skew_dims:
            return _first_dim_delta("skew_dims", dict(a.skew_dims), dict(b.skew_dims))
        return None
    for name in ("total", "dims", "support", "support_subgroup", "blocks"):
        va, vb = getattr(a, name), getattr(b, name)
        if va != vb:
            if name == "dims":
                return _first_dim_delta("dims", dict(va), dict(vb))
            return (name, va, vb)
    return None


def _first_dim_delta(name, da, db):
    for g in sorted(set(da) | set(db)):
        if da.get(g, 0) != db.get(g, 0):
            return (f"{name}[{g}]", da.get(g, 0), db.get(g, 0))
    return None


# ---------------------------------------------------------------------------
# sampling and enumeration
# ---------------------------------------------------------------------------

def _kappa_for_mu(table, mu_values, skew_value, rng, max_total, most_each=3):
    """Random ``kappa`` equal on partners and even where ``mu`` forces a skew form."""
    k = [0] * len(table.cosets)
    order = list(range(len(table.cosets)))
    rng.shuffle(order)
    budget = max_total
    for a in order:
        b = table.partner[a]
        if k[a] or rng.random() > 0.6:
            continue
        # rows added per unit: partners come together, skew cosets in pairs
        step = 2 if b != a or mu_values[a] == skew_value else 1
        if budget < step:
            continue
        v = rng.randint(1, min(budget // step, most_each))
        if b == a:
            k[a] = v * step
        else:
            k[a] = k[b] = v
        budget -= v * step
    return tuple(k)


def sample_tuple(kind: str, G: FinAbGroup, rng: random.Random, max_n: int = 6,
                 F: RootField = None, tries: int = 200) -> ParamTuple:
    """A random valid tuple of the given kind with ``2 <= n <= max_n``."""
    F = F or field_for_group(G)
    for _ in range(tries):
        try:
            p = _sample_once(kind, G, rng, max_n, F)
        except GradalgError:
            continue
        if p is not None:
            return p
    raise InvalidParameter(f"no valid {kind} tuple found over {G}")


def _sample_once(kind, G, rng, max_n, F):
    p_ = F.p
    if kind == "sl-II":
        choices = []
        for H in elementary_2_subgroups(G):
            for h in H.elements:
                if h != G.identity:
                    ctx = type2_context(G, H, h)
                    if ctx.Tbar.sqrt_order is not None:
                        choices.append((H, h, ctx))
        if not choices:
            return None
        H, h, ctx = rng.choice(choices)
        from .groups import alternating_bicharacters
        beta = rng.choice(alternating_bicharacters(ctx.Tbar))
        g0 = rng.choice(ctx.Gbar.elements)
        s = F.root(-ctx.chi(ctx.proj.lift(g0)))
        mu0 = rng.choice([s, (-s) % p_])
        from .forms import mu_from_type2
        D = pauli_for(ctx.Tbar, beta, F)
        table = coset_table(ctx.Gbar, ctx.Tbar, g0)
        mu = mu_from_type2(table, g0, mu0, ctx.chi, D, ctx.proj)
        kappa = _kappa_for_mu(table, mu.values, p_ - 1, rng, max_n // D.ell)
        p = ParamTuple("sl-II", G, ctx.Tbar, beta, kappa, g0=g0, H=H, h=h, mu0=mu0)
        return p if _size_ok(p, D, max_n) else None
    data = division_data(G, kind in ("assoc-antiauto", "assoc-involution", "so", "sp"))
    if not data:
        return None
    T, beta = rng.choice(data)
    D = pauli_for(T, beta, F)
    if kind in ("assoc", "sl-I"):
        parts = G.order // T.order
        total = rng.randint(1, max(1, max_n // D.ell))
        kappa = [0] * parts
        for _ in range(total):
            kappa[rng.randrange(parts)] += 1
        p = ParamTuple(kind, G, T, beta, tuple(kappa))
        return p if _size_ok(p, D, max_n) else None
    g0 = rng.choice(G.elements)
    table = coset_table(G, T, g0)
    if kind == "assoc-antiauto":
        roots = [F.root(Fraction(j, F.N)) for j in range(F.N)]
        mu = [None] * len(table.cosets)
        for a, b in enumerate(table.partner):
            if mu[a] is not None:
                continue
            if a == b:
                mu[a] = rng.choice([1, p_ - 1])
            else:
                mu[a] = rng.choice(roots)
                mu[b] = pow(mu[a], -1, p_)
        kappa = _kappa_for_mu(table, mu, p_ - 1, rng, max_n // D.ell)
        p = ParamTuple(kind, G, T, beta, kappa, g0=g0, mu=tuple(mu))
        return p if _size_ok(p, D, max_n) else None
    delta = {"so": 1, "sp": -1}.get(kind) or rng.choice([1, -1])
    mu = mu_from_delta(table, g0, delta, D)
    kappa = _kappa_for_mu(table, mu.values, p_ - 1, rng, max_n // D.ell)
    p = ParamTuple(kind, G, T, beta, kappa, g0=g0, delta=delta)
    if not _size_ok(p, D, max_n):
        return None
    if not exist_involution(G, T, beta, kappa, delta, g0, F):
        return None
    return p


def _size_ok(p, D, max_n):
    n = sum(p.kappa) * D.ell
    low = 1 if p.kind in ("assoc", "assoc-antiauto", "assoc-involution") else 2
    return low <= n <= max_n


def enumerate_tuples(kind: str, G: FinAbGroup, max_n: int, F: RootField = None,
                     min_n: int = None):
    """Every valid tuple of ``kind`` with ``n <= max_n``, in a fixed order.

    For ``assoc-antiauto`` the scalars ``mu`` range over ``+-1`` only.
    """
    F = F or field_for_group(G)
    low = min_n if min_n is not None else (1 if kind.startswith("assoc") else 2)
    if kind == "sl-II":
        from .census import type2_parameters
        from .forms import mu_from_type2
        for H, h, beta, kappa, mu0, g0 in type2_parameters(G, F, max_n, low):
            ctx = type2_context(G, H, h)
            D = pauli_for(ctx.Tbar, beta, F)
            table = coset_table(ctx.Gbar, ctx.Tbar, g0)
            mu = mu_from_type2(table, g0, mu0, ctx.chi, D, ctx.proj)
            if _form_ok(table, mu.values, kappa, F.p):
                yield ParamTuple("sl-II", G, ctx.Tbar, beta, kappa, g0=g0, H=H, h=h, mu0=mu0)
        return
    elementary = kind in ("assoc-antiauto", "assoc-involution", "so", "sp")
    for T, beta in division_data(G, elementary):
        D = pauli_for(T, beta, F)
        parts = G.order // T.order
        lo = -(-low // D.ell)
        if kind in ("assoc", "sl-I"):
            for kappa in kappa_vectors(parts, max_n // D.ell, lo):
                yield ParamTuple(kind, G, T, beta, kappa)
            continue
        deltas = {"so": (1,), "sp": (-1,)}.get(kind, (1, -1))
        for g0 in G.elements:
            table = coset_table(G, T, g0)
            if kind == "assoc-antiauto":
                free = [a for a, b in enumerate(table.partner) if a <= b]
                for signs in _sign_vectors(len(free)):
                    mu = [0] * len(table.cosets)
                    for a, s in zip(free, signs):
                        mu[a] = s % F.p
                        mu[table.partner[a]] = s % F.p
                    for kappa in kappa_vectors(parts, max_n // D.ell, lo):
                        if _form_ok(table, mu, kappa, F.p):
                            yield ParamTuple(kind, G, T, beta, kappa, g0=g0, mu=tuple(mu))
                continue
            for delta in deltas:
                for kappa in kappa_vectors(parts, max_n // D.ell, lo):
                    if kind == "sp" and (sum(kappa) * D.ell) % 2:
                        continue
                    if exist_involution(G, T, beta, kappa, delta, g0, F):
                        yield ParamTuple(kind, G, T, beta, kappa, g0=g0, delta=delta)


def _sign_vectors(k):
    return itertools.product((1, -1), repeat=k)


def _form_ok(table, mu, kappa, p) -> bool:
    for a, b in enumerate(table.partner):
        if kappa[a] != kappa[b]:
            return False
        if a == b and mu[a] == p - 1 and kappa[a] % 2:
            return False
    return True


def tuple_size(p: ParamTuple) -> int:
    """``n = |kappa| l`` for the tuple."""
    return sum(p.kappa) * (p.T.sqrt_order or 1)


@dataclass
class Census:
    kind: str
    group: FinAbGroup
    bound: int
    classes: dict          # n -> list of lists of tuples, first member is the representative

    def count(self, n=None) -> int:
        if n is None:
            return sum(len(c) for c in self.classes.values())
        return len(self.classes.get(n, []))

    def lines(self) -> list:
        out = [f"sweep kind={self.kind} G={list(self.group.moduli)} n<={self.bound}"]
        tuples = 0
        for n in sorted(self.classes):
            cls = self.classes[n]
            out.append(f"n={n}: {len(cls)} classes")
            for i, members in enumerate(cls, 1):
                tuples += len(members)
                out.append(f"  class {i} ({len(members)} tuples): "
                           + json_compact(members[0].as_dict()))
                for m in members[1:]:
                    out.append("    ~ " + json_compact(m.as_dict()))
        out.append(f"total: {self.count()} classes over {tuples} tuples")
        return out


def json_compact(d) -> str:
    import json
    return json.dumps(d, sort_keys=True, separators=(",", ":"))


def census(kind: str, G: FinAbGroup, bound: int, F: RootField = None) -> Census:
    """All valid tuples of ``kind`` with ``n <= bound``, bucketed by :func:`decide`.

    Kinds ``sl`` and ``so-sp`` pool the two families that the deciders
    compare with each other.
    """
    F = F or field_for_group(G)
    kinds = {"sl": ("sl-I", "sl-II"), "so-sp": ("so", "sp")}.get(kind, (kind,))
    classes = {}
    for kd in kinds:
        for p in enumerate_tuples(kd, G, bound, F):
            n = tuple_size(p)
            buckets = classes.setdefault(n, [])
            for members in buckets:
                if decide(members[0], p, F).equivalent:
                    members.append(p)
                    break
            else:
                buckets.append([p])
    return Census(kind, G, bound, classes)
