"""``gal-v1`` JSON artifacts and their verification.

An artifact is a plain JSON object.  Matrices are stored as integer residues
modulo the prime in the header, so files can be diffed and read by other
tools.  :func:`dumps` is canonical (sorted keys, fixed separators), which
makes ``dumps(loads(dumps(x))) == dumps(x)`` hold byte for byte.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

import numpy as np

from .errors import GradalgError, InvalidParameter, ParseError
from .field import Subspace, field_for_group, mat_inv
from .graded import GradedDecomposition, verify_grading
from .groups import (Bicharacter, FinAbGroup, Subgroup, alternating_bicharacters, make_group,
                     subgroup_from_generators, trivial_bicharacter)
from .isoclass import KINDS, ParamTuple, realize
from .lie import expected_dimension, type2_context

__all__ = [
    "FORMAT",
    "build_artifact",
    "dumps",
    "loads",
    "params_to_dict",
    "params_from_dict",
    "verify_artifact",
    "ArtifactReport",
    "artifact_basis",
]

FORMAT = "gal-v1"


# ---------------------------------------------------------------------------
# parameters
# ---------------------------------------------------------------------------

def params_to_dict(p: ParamTuple) -> dict:
    return p.as_dict()


def _elements(G: FinAbGroup, raw, what):
    try:
        return [G.element(x) for x in raw]
    except (GradalgError, TypeError, ValueError) as exc:
        raise ParseError(f"bad {what}: {raw!r}") from exc


def _subgroup(G, raw, what) -> Subgroup:
    return subgroup_from_generators(G, _elements(G, raw, what))


def _beta(T: Subgroup, raw) -> Bicharacter:
    if raw is None:
        if T.order == 1:
            return trivial_bicharacter(T)
        options = alternating_bicharacters(T)
        if not options:
            raise InvalidParameter(f"no nondegenerate alternating bicharacter on {T}")
        return options[0]
    try:
        gens = _elements(T.parent, raw["gens"], "beta generators")
        gram = [[Fraction(q) for q in row] for row in raw["gram"]]
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad bicharacter: {raw!r}") from exc
    return Bicharacter(T, gens, gram)


def params_from_dict(d: dict) -> ParamTuple:
    """Inverse of :meth:`ParamTuple.as_dict`.

    ``T`` and ``H`` may list any generating set; ``beta`` may be omitted, in
    which case the first nondegenerate alternating bicharacter is used.
    """
    if not isinstance(d, dict):
        raise ParseError("parameters must be a JSON object")
    kind = d.get("kind")
    if kind not in KINDS:
        raise ParseError(f"unknown kind {kind!r}; expected one of {', '.join(KINDS)}")
    try:
        G = make_group([int(m) for m in d["G"]])
        kappa = tuple(int(v) for v in d["kappa"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"parameters need integer lists 'G' and 'kappa': {exc}") from exc
    kw = {}
    if kind == "sl-II":
        try:
            H = _subgroup(G, d["H"], "H")
            h = G.element(d["h"])
            kw["mu0"] = int(d["mu0"])
            g0 = d["g0"]
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"sl-II parameters need H, h, mu0 and g0: {exc}") from exc
        ctx = type2_context(G, H, h)
        T = ctx.Tbar
        raw_beta = d.get("beta")
        beta = _beta(T, raw_beta)
        kw.update(H=H, h=h, g0=ctx.Gbar.element(g0))
    else:
        T = _subgroup(G, d.get("T", []), "T")
        beta = _beta(T, d.get("beta"))
        if kind != "assoc" and kind != "sl-I":
            if "g0" not in d:
                raise ParseError(f"{kind} parameters need g0")
            kw["g0"] = G.element(d["g0"])
        if kind in ("assoc-involution", "so", "sp"):
            delta = {"so": 1, "sp": -1}.get(kind, d.get("delta"))
            if delta not in (1, -1):
                raise ParseError("delta must be 1 or -1")
            if "delta" in d and d["delta"] != delta:
                raise ParseError(f"{kind} fixes delta = {delta}")
            kw["delta"] = delta
        if kind == "assoc-antiauto":
            if "mu" not in d:
                raise ParseError("assoc-antiauto parameters need mu")
            kw["mu"] = tuple(int(v) for v in d["mu"])
    return ParamTuple(kind, G, T, beta, kappa, **kw)


# ---------------------------------------------------------------------------
# artifacts
# ---------------------------------------------------------------------------

def _rows(M) -> list:
    return np.asarray(M, dtype=np.int64).tolist()


def build_artifact(p: ParamTuple, F=None, dense: bool = False) -> dict:
    """Build the algebra for ``p`` and describe it as a ``gal-v1`` object."""
    F = F or field_for_group(p.G)
    X = realize(p, F)
    R = X.R
    G_amb = R.group
    header = {"format": FORMAT, "p": F.p, "N": F.N, "zeta_N": F.zeta,
              "group": list(p.G.moduli), "grading_group": list(G_amb.moduli)}
    els = G_amb.elements
    body = {
        "params": p.as_dict(),
        "n": R.n, "k": R.k, "ell": R.ell,
        "pauli": {"elements": [list(t) for t in R.pauli.elements],
                  "matrices": _rows(R.pauli.matrices)},
        "basis_index": "E(r, c, t) at position (r * k + c) * m + t",
        "degree_table": [list(els[i]) for i in R.degree_table.reshape(-1)],
    }
    dec = R.decomposition()
    body["components"] = {_key(g): S.dim for g, S in sorted(dec.components.items())}
    if dense:
        body["matrices"] = {_key(g): _rows(dec.basis_matrices(g)) for g in dec.support}
    if X.data is not None:
        body["involution"] = {"S": _rows(X.data.S), "g0": list(X.data.g0),
                              "delta": X.data.delta, "lambda": list(X.data.lam)}
    if X.lie is not None:
        L = X.lie
        lie = {"family": L.family, "dim": L.dim,
               "basis": {_key(g): _rows(B) for g, B in sorted(L.basis_coords.items())}}
        if L.refinement is not None:
            lie["refinement"] = {_key(g): _rows(S.basis)
                                 for g, S in sorted(L.refinement.items()) if S.dim}
        body["lie"] = lie
    return {"header": header, "body": body}


def _key(g) -> str:
    return ",".join(str(x) for x in g)


def _unkey(s: str) -> tuple:
    return tuple(int(x) for x in s.split(",")) if s else ()


def dumps(artifact: dict) -> str:
    return json.dumps(artifact, sort_keys=True, separators=(",", ":")) + "\n"


def loads(text: str) -> dict:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"not JSON: {exc}") from exc
    if not isinstance(obj, dict) or obj.get("header", {}).get("format") != FORMAT:
        raise ParseError(f"not a {FORMAT} artifact")
    for key in ("p", "group"):
        if key not in obj["header"]:
            raise ParseError(f"header lacks {key!r}")
    body = obj.get("body")
    if not isinstance(body, dict):
        raise ParseError("artifact lacks a body")
    for key in ("params", "n", "k", "ell", "pauli", "degree_table"):
        if key not in body:
            raise ParseError(f"body lacks {key!r}")
    return obj


# ---------------------------------------------------------------------------
# verification from the stored data alone
# ---------------------------------------------------------------------------

@dataclass
class ArtifactReport:
    checks: dict = dc_field(default_factory=dict)       # name -> bool
    violations: list = dc_field(default_factory=list)   # (check, g, h, witness)
    expected_failure: bool = False

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def as_dict(self) -> dict:
        return {"ok": self.ok, "checks": dict(sorted(self.checks.items())),
                "violations": [list(v) for v in self.violations],
                "expected_failure": self.expected_failure}


def artifact_basis(body, p) -> np.ndarray:
    k, ell = int(body["k"]), int(body["ell"])
    X = np.asarray(body["pauli"]["matrices"], dtype=np.int64).reshape(-1, ell, ell) % p
    m = len(X)
    n = k * ell
    out = np.zeros((k, k, m, n, n), dtype=np.int64)
    for r in range(k):
        for c in range(k):
            out[r, c, :, r * ell:(r + 1) * ell, c * ell:(c + 1) * ell] = X
    return out.reshape(k * k * m, n, n)


def _decomposition(group, n, p, coords_by_g: dict, basis, expected=None) -> GradedDecomposition:
    flat = basis.reshape(len(basis), -1)
    comps = {}
    for g, C in coords_by_g.items():
        C = np.asarray(C, dtype=np.int64).reshape(-1, len(basis))
        comps[g] = Subspace(C @ flat % p, p, n * n)
    return GradedDecomposition(group, n, p, comps, expected_dim=expected)


def _record(report, name, grading_report):
    report.checks[name] = grading_report.ok
    if not grading_report.direct_sum:
        report.violations.append((name, None, None, "components are not independent"))
    if grading_report.total_dim != grading_report.expected_dim:
        report.violations.append((name, None, None,
                                  f"total dimension {grading_report.total_dim} "
                                  f"!= {grading_report.expected_dim}"))
    for v in grading_report.violations:
        report.violations.append((name, list(v.g), list(v.h), list(v.witness)))


def verify_artifact(obj: dict, associative: bool = False) -> ArtifactReport:
    """Check a stored artifact without rebuilding it from its parameters.

    With ``associative`` the refined decomposition of a Type II artifact is
    checked against the associative product and the check counts as passed
    only when violations are found.
    """
    header, body = obj["header"], obj["body"]
    p = int(header["p"])
    try:
        G = make_group(header.get("grading_group", header["group"]))
        G_full = make_group(header["group"])
        n = int(body["n"])
        basis = artifact_basis(body, p)
        degs = [G.element(x) for x in body["degree_table"]]
    except (GradalgError, TypeError, ValueError, KeyError) as exc:
        raise ParseError(f"malformed artifact body: {exc}") from exc
    if len(degs) != len(basis):
        raise ParseError("degree table does not match the basis")
    report = ArtifactReport()
    lie = body.get("lie")
    if associative:
        if not lie or "refinement" not in lie:
            raise InvalidParameter("the associative mode needs a Type II Lie artifact")
        refined = _decomposition(G_full, n, p, {_unkey(g): C for g, C in lie["refinement"].items()},
                                 basis)
        rep = verify_grading(refined, "assoc")
        report.expected_failure = True
        report.checks["associative-fails"] = bool(rep.violations)
        for v in rep.violations:
            report.violations.append(("assoc", list(v.g), list(v.h), list(v.witness)))
        return report
    by_g = {}
    for i, g in enumerate(degs):
        by_g.setdefault(g, []).append(i)
    N = len(basis)
    coords = {g: np.eye(N, dtype=np.int64)[idx] for g, idx in by_g.items()}
    ambient = _decomposition(G, n, p, coords, basis)
    _record(report, "ambient", verify_grading(ambient, "assoc"))
    inv = body.get("involution")
    if inv is not None:
        S = np.asarray(inv["S"], dtype=np.int64) % p
        try:
            Sinv = mat_inv(S, p)
        except (ZeroDivisionError, GradalgError):
            report.checks["form-invertible"] = False
            report.violations.append(("form", None, None, "S is singular"))
            Sinv = None
        if Sinv is not None:
            report.checks["form-invertible"] = True
            phi = np.matmul(np.matmul(Sinv, np.swapaxes(basis, 1, 2)) % p, S) % p
            flat = phi.reshape(N, -1)
            bad = [i for i in range(N)
                   if not ambient.component(degs[i]).contains(flat[i:i + 1])]
            report.checks["form-graded"] = not bad
            for i in bad[:1]:
                report.violations.append(("form-graded", list(degs[i]), None, [i]))
            delta = inv.get("delta")
            if delta is not None:
                want = S if delta == 1 else (-S) % p
                report.checks["form-sign"] = bool(np.array_equal(S.T % p, want))
                phi2 = np.matmul(np.matmul(Sinv, np.swapaxes(phi, 1, 2)) % p, S) % p
                report.checks["involutive"] = bool(np.array_equal(phi2, basis % p))
    if lie is not None:
        fam = lie["family"]
        lie_dec = _decomposition(G_full, n, p, {_unkey(g): C for g, C in lie["basis"].items()},
                                 basis, expected=expected_dimension(fam, n))
        _record(report, "lie", verify_grading(lie_dec, "lie"))
        ranks_ok = all(len(C) == lie_dec.component(_unkey(g)).dim for g, C in lie["basis"].items())
        report.checks["lie-basis-independent"] = ranks_ok
        if "refinement" in lie:
            refined = _decomposition(G_full, n, p,
                                     {_unkey(g): C for g, C in lie["refinement"].items()},
                                     basis)
            _record(report, "refined-lie", verify_grading(refined, "lie"))
    return report
