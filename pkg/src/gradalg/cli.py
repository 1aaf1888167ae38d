"""Command line: construct, verify, basis, decide-iso, fingerprint, sweep.

Exit codes: 0 clean, 1 mathematical violation, 2 parse or parameter error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

import numpy as np

from .errors import GradalgError, ParseError
from .field import field_for_group
from .groups import make_group
from .isoclass import KINDS, census, decide, fingerprint_compare, kind_fingerprint, tuple_size, \
    verify_witness
from .serialize import (build_artifact, dumps, loads, params_from_dict, verify_artifact,
                        artifact_basis)

log = logging.getLogger("gradalg")

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT = 0, 1, 2
DEFAULT_MAX_N = 32


class _Fail(Exception):
    def __init__(self, code, message):
        super().__init__(message)
        self.code = code


def _int_list(text: str) -> list:
    text = text.strip()
    if not text:
        return []
    try:
        return [int(x) for x in text.split(",")]
    except ValueError as exc:
        raise ParseError(f"expected comma-separated integers, got {text!r}") from exc


def _element_list(text: str) -> list:
    """``"1,0;0,1"`` -> ``[[1, 0], [0, 1]]``."""
    return [_int_list(part) for part in text.split(";") if part.strip()]


def _gram(text: str) -> list:
    return [[x.strip() for x in row.split(",")] for row in text.split(";") if row.strip()]


def _read_json(path: str):
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path} is not JSON: {exc}") from exc


def _params_from_args(args) -> dict:
    if args.params:
        d = _read_json(args.params)
        return d["body"]["params"] if "body" in d else d
    if args.group is None or args.kappa is None:
        raise ParseError("give --params FILE, or at least --group and --kappa")
    d = {"kind": args.kind, "G": _int_list(args.group), "kappa": _int_list(args.kappa)}
    if args.T is not None:
        d["T"] = _element_list(args.T)
    if args.beta_gens is not None:
        d["beta"] = {"gens": _element_list(args.beta_gens), "gram": _gram(args.beta_gram or "")}
    for key in ("g0", "h"):
        v = getattr(args, key)
        if v is not None:
            d[key] = _int_list(v)
    if args.H is not None:
        d["H"] = _element_list(args.H)
    if args.delta is not None:
        d["delta"] = args.delta
    if args.mu is not None:
        d["mu"] = _int_list(args.mu)
    if args.mu0 is not None:
        d["mu0"] = args.mu0
    return d


def _field(args, G):
    return field_for_group(G, args.prime)


def _load_params(source: str):
    """A parameter file or an artifact."""
    d = _read_json(source)
    if isinstance(d, dict) and "header" in d:
        return params_from_dict(d["body"]["params"]), d["header"].get("p")
    return params_from_dict(d), None


def _write(text: str, out):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_construct(args) -> int:
    p = params_from_dict(_params_from_args(args))
    F = _field(args, p.G)
    n = tuple_size(p)
    if n > args.max_n:
        raise _Fail(EXIT_INPUT, f"invalid-parameter: n = {n} exceeds --max-n {args.max_n}")
    art = build_artifact(p, F, dense=args.dense)
    text = dumps(art)
    body = art["body"]
    dims = body["lie"]["basis"] if "lie" in body else body["components"]
    dims = {g: (len(v) if isinstance(v, list) else v) for g, v in dims.items()}
    summary = f"{p.kind}: n = {body['n']}, p = {F.p}, dims {json.dumps(dims, sort_keys=True)}"
    if args.out:
        Path(args.out).write_text(text)
        print(summary)
    else:
        sys.stdout.write(text)
        print(summary, file=sys.stderr)
    return EXIT_OK


def _load_artifact(path):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    return loads(text)


def cmd_verify(args) -> int:
    art = _load_artifact(args.artifact)
    report = verify_artifact(art, associative=args.associative)
    for name, g, h, w in report.violations:
        print(f"violation [{name}] g={g} h={h} witness={w}")
    for name, ok in sorted(report.checks.items()):
        print(f"{name}: {'ok' if ok else 'FAILED'}")
    if report.expected_failure:
        print("associative product expected to fail: "
              + ("violations found" if report.ok else "no violations found"))
    print("verified" if report.ok else "violations present" if not report.expected_failure
          else "expected failure not observed")
    return EXIT_OK if report.ok else EXIT_VIOLATION


def cmd_basis(args) -> int:
    art = _load_artifact(args.artifact)
    body = art["body"]
    p = int(art["header"]["p"])
    key = ",".join(str(x) for x in _int_list(args.degree))
    basis = artifact_basis(body, p)
    if "lie" in body:
        C = np.asarray(body["lie"]["basis"].get(key, []), dtype=np.int64).reshape(-1, len(basis))
        mats = (C @ basis.reshape(len(basis), -1) % p).reshape(-1, body["n"], body["n"])
    else:
        idx = [i for i, g in enumerate(body["degree_table"])
               if ",".join(str(x) for x in g) == key]
        mats = basis[idx]
    _write(json.dumps({"degree": _int_list(args.degree), "p": p,
                       "basis": mats.tolist()}, separators=(",", ":")) + "\n", args.out)
    return EXIT_OK


def cmd_decide(args) -> int:
    p, pa = _load_params(args.a)
    q, pb = _load_params(args.b)
    F = _field(args, p.G) if args.prime or not pa else field_for_group(p.G, pa)
    dec = decide(p, q, F)
    out = dec.as_dict()
    if not dec.equivalent and args.fingerprints:
        delta = fingerprint_compare(kind_fingerprint(p, F), kind_fingerprint(q, F))
        if delta is not None:
            out["refutation"]["fingerprint_delta"] = [str(x) for x in delta]
    if dec.equivalent and args.check:
        out["witness"]["verified"] = verify_witness(p, q, dec, F)
    _write(json.dumps(out, sort_keys=True) + "\n", args.out)
    return EXIT_OK


def cmd_fingerprint(args) -> int:
    p, pa = _load_params(args.source)
    F = field_for_group(p.G, args.prime or pa)
    fp = kind_fingerprint(p, F)
    _write(json.dumps(fp.as_dict(), sort_keys=True) + "\n", args.out)
    return EXIT_OK


def cmd_sweep(args) -> int:
    G = make_group(_int_list(args.group))
    if args.n_bound > args.max_n:
        raise _Fail(EXIT_INPUT, f"invalid-parameter: n-bound {args.n_bound} exceeds --max-n "
                                f"{args.max_n}")
    F = _field(args, G)
    c = census(args.kind, G, args.n_bound, F)
    _write("\n".join(c.lines()) + "\n", args.out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="gradalg",
                                 description="Graded matrix and Lie algebras over finite fields")
    ap.add_argument("--prime", type=int, default=None, help="field characteristic")
    ap.add_argument("--max-n", type=int, default=DEFAULT_MAX_N, help="largest matrix size allowed")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", help="build an algebra and write a gal-v1 artifact")
    c.add_argument("kind", choices=KINDS)
    c.add_argument("--params", help="parameter JSON file (or an artifact)")
    c.add_argument("--group", help="invariant factors, e.g. 2,2")
    c.add_argument("--kappa", help="multiplicities by coset, e.g. 1,1")
    c.add_argument("--T", help="generators of T, e.g. '1,0;0,1'")
    c.add_argument("--beta-gens", help="generators for the bicharacter Gram matrix")
    c.add_argument("--beta-gram", help="Gram matrix of exponents, e.g. '0,1/2;1/2,0'")
    c.add_argument("--g0")
    c.add_argument("--delta", type=int, choices=(1, -1))
    c.add_argument("--mu", help="scalars by coset (assoc-antiauto)")
    c.add_argument("--H", help="generators of H (sl-II)")
    c.add_argument("--h", help="the element h (sl-II)")
    c.add_argument("--mu0", type=int)
    c.add_argument("--dense", action="store_true", help="also store component matrices")
    c.add_argument("--out")
    c.set_defaults(func=cmd_construct)

    v = sub.add_parser("verify", help="check a stored artifact")
    v.add_argument("artifact")
    v.add_argument("--associative", action="store_true",
                   help="Type II only: expect the associative check to fail")
    v.set_defaults(func=cmd_verify)

    b = sub.add_parser("basis", help="print the basis of one homogeneous component")
    b.add_argument("artifact")
    b.add_argument("--degree", required=True)
    b.add_argument("--out")
    b.set_defaults(func=cmd_basis)

    d = sub.add_parser("decide-iso", help="decide equivalence of two parameter sets")
    d.add_argument("a")
    d.add_argument("b")
    d.add_argument("--check", action="store_true", help="verify the witness by conjugation")
    d.add_argument("--fingerprints", action="store_true",
                   help="report a fingerprint discrepancy for inequivalent pairs")
    d.add_argument("--out")
    d.set_defaults(func=cmd_decide)

    f = sub.add_parser("fingerprint", help="isomorphism invariants of a parameter set")
    f.add_argument("source")
    f.add_argument("--out")
    f.set_defaults(func=cmd_fingerprint)

    s = sub.add_parser("sweep", help="classes of all parameter sets up to a size")
    s.add_argument("--group", required=True)
    s.add_argument("--kind", required=True, choices=KINDS + ("sl", "so-sp"))
    s.add_argument("--n-bound", type=int, required=True)
    s.add_argument("--out")
    s.set_defaults(func=cmd_sweep)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except _Fail as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except ParseError as exc:
        print(f"error: {exc.code}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except GradalgError as exc:
        print(f"error: {exc.code}: {exc}", file=sys.stderr)
        return EXIT_VIOLATION if exc.code == "verification-failure" else EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
