"""Command line interface: ``ess <command> ...``.

Exit codes: 0 success, 1 a checked property fails, 2 malformed input,
3 internal verification failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from itertools import combinations
from typing import Any

from . import catalog as cat
from .document import Document, DocumentError, dumps, format_matrix, format_scalar, load, save
from .extrinsic import (
    ClosureFailure,
    EquivalenceError,
    FormMismatch,
    InvalidMorphism,
    NotFull,
    PairMismatch,
    affine_equivalence,
    ferus_construct,
    fullness,
    reduce_to_full,
    validate,
)
from .lie_core import InternalError
from .linalg import Subspace
from .symmetric_pair import bianchi_check, bivector_solve, curvature, srk

EXIT_OK, EXIT_FAIL, EXIT_MALFORMED, EXIT_INTERNAL = 0, 1, 2, 3
_STATUS = {EXIT_OK: "ok", EXIT_FAIL: "fail", EXIT_MALFORMED: "malformed", EXIT_INTERNAL: "internal_error"}


class Failure(Exception):
    def __init__(self, code: int, message: str, result: dict | None = None):
        self.code = code
        self.message = message
        self.result = result or {}
        super().__init__(message)


def _vectors(S: Subspace) -> list[list[str]]:
    return [[format_scalar(x) for x in v] for v in S.vectors()]


def _need(doc: Document, what: str) -> Any:
    obj = getattr(doc, what)
    if obj is None:
        raise Failure(EXIT_MALFORMED, f'document has no "{what}"')
    return obj


def _need_valid_morphism(doc: Document):
    m = _need(doc, "morphism")
    rep = validate(m)
    if not rep.valid:
        raise Failure(EXIT_FAIL, "morphism invalid", {"violations": rep.violations})
    return m


def _bound(m, r: int, full: bool | None) -> dict:
    lower = m.pair.dim_p + r
    return {
        "dim_V": m.dim_V,
        "dim_p_plus_srk": lower,
        "holds": m.dim_V >= lower,
        "equality": m.dim_V == lower,
        "equality_iff_full": None if full is None else (m.dim_V == lower) == full,
    }


def summary(doc: Document) -> dict:
    """Derived dimensions every report carries; null where not applicable."""
    out: dict[str, Any] = dict.fromkeys(
        ("dim_V", "dim_k", "dim_p", "srk", "dim_w1", "dim_w2", "valid", "dimension_bound")
    )
    out["dim_V"] = doc.space.dim
    if doc.pair is not None:
        out["dim_k"], out["dim_p"] = doc.pair.dim_k, doc.pair.dim_p
        out["srk"] = srk(doc.pair)
    m = doc.morphism
    if m is not None:
        rep = validate(m)
        out["dim_w1"], out["dim_w2"], out["valid"] = rep.dim_w1, rep.dim_w2, rep.valid
        out["dimension_bound"] = _bound(m, out["srk"], fullness(m).is_full if rep.valid else None)
    return out


def _load(path: str, ctx: list) -> Document:
    doc = load(path)
    ctx.append(summary(doc))
    return doc


def cmd_validate(args, ctx) -> tuple[int, dict]:
    doc = _load(args.file, ctx)
    result: dict[str, Any] = {"space_dim": doc.space.dim}
    code = EXIT_OK
    r = None
    if doc.pair is not None:
        R = curvature(doc.pair)
        r = srk(doc.pair)
        ok = bianchi_check(R)
        result["pair"] = {"dim_k": doc.pair.dim_k, "dim_p": doc.pair.dim_p, "bianchi": ok, "srk": r}
        if not ok:
            code = EXIT_INTERNAL
    if doc.morphism is not None:
        rep = validate(doc.morphism)
        mres: dict[str, Any] = {"valid": rep.valid, "violations": rep.violations, "dim_w1": rep.dim_w1, "dim_w2": rep.dim_w2}
        if rep.valid:
            f = fullness(doc.morphism)
            mres["full"] = f.is_full
            mres["dimension_bound"] = _bound(doc.morphism, r, f.is_full)
        elif code == EXIT_OK:
            code = EXIT_FAIL
        result["morphism"] = mres
    if doc.alpha is not None:
        result["alpha"] = {"dim_w1": doc.alpha.w1.dim, "dim_w2": doc.alpha.w2.dim, "symmetric": True}
    return code, result


def cmd_curvature(args, ctx) -> tuple[int, dict]:
    doc = _load(args.file, ctx)
    P = _need(doc, "pair")
    R = curvature(P)
    B = bivector_solve(R)
    n = P.dim_p
    return EXIT_OK, {
        "R": [[i, j, format_matrix(R.values[i][j])] for i, j in combinations(range(n), 2)],
        "bivector": {"factors": [format_matrix(A) for A in B.factors], "coeffs": format_matrix(B.coeffs)},
        "bianchi": bianchi_check(R),
        "srk": B.size,
    }


def cmd_srk(args, ctx) -> tuple[int, dict]:
    doc = _load(args.file, ctx)
    return EXIT_OK, {"srk": srk(_need(doc, "pair"))}


def cmd_full(args, ctx) -> tuple[int, dict]:
    doc = _load(args.file, ctx)
    m = _need_valid_morphism(doc)
    f = fullness(m)
    result = {
        "full": f.is_full,
        "c1_minimal_stable": f.c1_minimal_stable,
        "c2_dim_matches_srk": f.c2_dim_matches_srk,
        "c3_A_injective": f.c3_A_injective,
        "c4_span_condition": f.c4_span_condition,
        "dim_V": m.dim_V,
        "dim_w2": f.dim_w2,
        "srk": f.srk,
        "witness": _vectors(f.witness),
        "w2_prime": _vectors(f.w2_prime),
        "a_kernel": _vectors(f.a_kernel),
        "dimension_bound": _bound(m, f.srk, f.is_full),
    }
    code = EXIT_FAIL if args.expect_full and not f.is_full else EXIT_OK
    return code, result


def cmd_reduce(args, ctx) -> tuple[int, dict]:
    doc = _load(args.file, ctx)
    m = _need_valid_morphism(doc)
    res = reduce_to_full(m)
    save(Document(res.reduced.space, m.pair, res.reduced), args.output)
    return EXIT_OK, {
        "output": args.output,
        "dim_V": m.dim_V,
        "dim_V_prime": res.embedding.dim,
        "dim_null": res.quotient.null.dim,
        "reduced_dim_V": res.reduced.dim_V,
        "source": _vectors(res.embedding),
        "null": _vectors(res.quotient.null),
        "projection": format_matrix(res.quotient.projection),
        "section": format_matrix(res.quotient.section),
    }


def cmd_equiv(args, ctx) -> tuple[int, dict]:
    d1, d2 = _load(args.file1, ctx), _load(args.file2, ctx)
    m1, m2 = _need(d1, "morphism"), _need(d2, "morphism")
    try:
        w = affine_equivalence(m1, m2)
    except InvalidMorphism as exc:
        raise Failure(EXIT_FAIL, "morphism invalid", {"refused": "InvalidMorphism", "violations": exc.violations})
    except EquivalenceError as exc:
        kind = {NotFull: "NotFull", PairMismatch: "PairMismatch", FormMismatch: "FormMismatch"}[type(exc)]
        raise Failure(EXIT_FAIL, str(exc), {"refused": kind})
    return EXIT_OK, {"equivalent": True, "iota": format_matrix(w.iota)}


def cmd_construct(args, ctx) -> tuple[int, dict]:
    doc = _load(args.file, ctx)
    data = _need(doc, "alpha")
    try:
        P, m = ferus_construct(data)
    except ClosureFailure as exc:
        raise Failure(EXIT_FAIL, str(exc), {"closure_failure": exc.kind, "detail": exc.detail})
    save(Document(m.space, P, m, data), args.output)
    f = fullness(m)
    return EXIT_OK, {
        "output": args.output,
        "dim_k": P.dim_k,
        "dim_p": P.dim_p,
        "dim_V": m.dim_V,
        "srk": f.srk,
        "full": f.is_full,
    }


def cmd_catalog(args, ctx) -> tuple[int, dict] | str:
    try:
        e = cat.by_name(args.name)
    except KeyError:
        raise Failure(EXIT_MALFORMED, f"unknown catalog entry {args.name!r}; known: {', '.join(cat.NAMES)}")
    doc = Document(e.morphism.space if e.morphism else e.pair.p_space, e.pair, e.morphism, e.alpha)
    if args.output is None:
        return dumps(doc)
    save(doc, args.output)
    ctx.append(summary(doc))
    return EXIT_OK, {"output": args.output, "name": e.name}


COMMANDS = {
    "validate": cmd_validate,
    "curvature": cmd_curvature,
    "srk": cmd_srk,
    "full": cmd_full,
    "reduce": cmd_reduce,
    "equiv": cmd_equiv,
    "construct": cmd_construct,
    "catalog": cmd_catalog,
}


def build_parser() -> argparse.ArgumentParser:
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=("json", "text"), default=argparse.SUPPRESS)
    p = argparse.ArgumentParser(prog="ess", description=__doc__.splitlines()[0], parents=[fmt])
    sub = p.add_subparsers(dest="command", required=True)
    for name in ("validate", "curvature", "srk"):
        sp = sub.add_parser(name, parents=[fmt])
        sp.add_argument("file")
    sp = sub.add_parser("full", parents=[fmt])
    sp.add_argument("file")
    sp.add_argument("--expect-full", action="store_true")
    for name in ("reduce", "construct"):
        sp = sub.add_parser(name, parents=[fmt])
        sp.add_argument("file")
        sp.add_argument("-o", "--output", required=True)
    sp = sub.add_parser("equiv", parents=[fmt])
    sp.add_argument("file1")
    sp.add_argument("file2")
    sp = sub.add_parser("catalog", parents=[fmt])
    sp.add_argument("name")
    sp.add_argument("-o", "--output")
    return p


def _render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, sort_keys=True) + "\n"
    lines = [f"command: {report['command']}", f"status: {report['status']}"]
    for e in report["errors"]:
        lines.append(f"error: {e}")
    for i, sm in enumerate(report["summary"]):
        lines.append(f"input[{i}]: {json.dumps(sm, sort_keys=True)}")
    for k, v in report["result"].items():
        if isinstance(v, (bool, int, type(None))):
            lines.append(f"{k}: {json.dumps(v)}")
        elif isinstance(v, str):
            lines.append(f"{k}: {v}")
        else:
            lines.append(f"{k}: {json.dumps(v, sort_keys=True)}")
    return "\n".join(lines) + "\n"


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    fmt = getattr(args, "format", "text")
    errors: list[str] = []
    ctx: list[dict] = []
    try:
        out = COMMANDS[args.command](args, ctx)
        if isinstance(out, str):
            sys.stdout.write(out)
            return EXIT_OK
        code, result = out
    except Failure as exc:
        code, result = exc.code, exc.result
        errors.append(exc.message)
    except DocumentError as exc:
        code, result = EXIT_MALFORMED, {}
        errors.append(str(exc))
    except InternalError as exc:
        code, result = EXIT_INTERNAL, {}
        errors.append(f"internal verification failure: {exc}")
    report = {"command": args.command, "status": _STATUS[code], "exit_code": code, "errors": errors, "result": result, "summary": ctx}
    sys.stdout.write(_render(report, fmt))
    return code


if __name__ == "__main__":
    sys.exit(main())
