"""JSON document format.

Scalars are strings "n" or "p/q" in lowest terms with q > 1; matrices are
row-major arrays of such strings.  Malformed documents are rejected, never
repaired.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from pathlib import Path
from typing import Any

from .extrinsic import ExtrinsicMorphism, FundamentalFormData
from .lie_core import LieAlgebra
from .linalg import Matrix
from .symmetric_pair import PairError, SymmetricPair, SymplecticSymmetricPair
from .symplectic_core import SymplecticError, SymplecticSpace

_SCALAR = re.compile(r"^(-?(?:0|[1-9][0-9]*))(?:/([1-9][0-9]*))?$")
TOP_KEYS = {"scalar_field", "symplectic_space", "pair", "morphism", "alpha"}


class DocumentError(ValueError):
    pass


def parse_scalar(s: Any, where: str) -> Fraction:
    if not isinstance(s, str):
        raise DocumentError(f"{where}: scalar must be a string, got {type(s).__name__}")
    m = _SCALAR.match(s)
    if not m or s == "-0":
        raise DocumentError(f"{where}: malformed scalar {s!r}")
    num = int(m.group(1))
    if m.group(2) is None:
        return Fraction(num)
    den = int(m.group(2))
    q = Fraction(num, den)
    if den == 1 or q.denominator != den or num == 0:
        raise DocumentError(f"{where}: scalar {s!r} is not in lowest terms")
    return q


def format_scalar(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_vector(v: Any, where: str, length: int | None = None) -> tuple[Fraction, ...]:
    if not isinstance(v, list):
        raise DocumentError(f"{where}: expected an array")
    if length is not None and len(v) != length:
        raise DocumentError(f"{where}: expected {length} entries, got {len(v)}")
    return tuple(parse_scalar(x, f"{where}[{i}]") for i, x in enumerate(v))


def parse_matrix(m: Any, where: str, rows: int | None = None, cols: int | None = None) -> Matrix:
    if not isinstance(m, list):
        raise DocumentError(f"{where}: expected an array of rows")
    if rows is not None and len(m) != rows:
        raise DocumentError(f"{where}: expected {rows} rows, got {len(m)}")
    out = [parse_vector(r, f"{where}[{i}]", cols) for i, r in enumerate(m)]
    if out and any(len(r) != len(out[0]) for r in out):
        raise DocumentError(f"{where}: ragged matrix")
    if not out:
        return Matrix.zeros(0, cols or 0)
    return Matrix(out)


def format_matrix(M: Matrix) -> list[list[str]]:
    return [[format_scalar(x) for x in M.row(i)] for i in range(M.rows)]


def _int(d: dict, key: str, where: str) -> int:
    v = d.get(key)
    if not isinstance(v, int) or isinstance(v, bool) or v < 0:
        raise DocumentError(f"{where}.{key}: expected a non-negative integer")
    return v


def _obj(d: Any, where: str, keys: set[str]) -> dict:
    if not isinstance(d, dict):
        raise DocumentError(f"{where}: expected an object")
    missing = keys - d.keys()
    extra = d.keys() - keys
    if missing:
        raise DocumentError(f"{where}: missing keys {sorted(missing)}")
    if extra:
        raise DocumentError(f"{where}: unknown keys {sorted(extra)}")
    return d


def _sparse(entries: Any, where: str, dim: int, vlen: int, strict_upper: bool) -> dict[tuple[int, int], tuple]:
    if not isinstance(entries, list):
        raise DocumentError(f"{where}: expected an array of triples")
    out = {}
    for t, e in enumerate(entries):
        w = f"{where}[{t}]"
        if not isinstance(e, list) or len(e) != 3:
            raise DocumentError(f"{w}: expected [i, j, vector]")
        i, j, v = e
        if not all(isinstance(x, int) and not isinstance(x, bool) for x in (i, j)):
            raise DocumentError(f"{w}: indices must be integers")
        if not (0 <= i < dim and 0 <= j < dim):
            raise DocumentError(f"{w}: index out of range")
        if (i >= j) if strict_upper else (i > j):
            raise DocumentError(f"{w}: indices must satisfy i {'<' if strict_upper else '<='} j")
        if (i, j) in out:
            raise DocumentError(f"{w}: duplicate entry ({i}, {j})")
        out[(i, j)] = parse_vector(v, w + "[2]", vlen)
    return out


@dataclass(frozen=True)
class Document:
    space: SymplecticSpace
    pair: SymplecticSymmetricPair | None = None
    morphism: ExtrinsicMorphism | None = None
    alpha: FundamentalFormData | None = None


def _space(d: Any, where: str) -> SymplecticSpace:
    d = _obj(d, where, {"dim", "gram"})
    n = _int(d, "dim", where)
    gram = parse_matrix(d["gram"], where + ".gram", n, n)
    try:
        return SymplecticSpace(gram)
    except SymplecticError as exc:
        raise DocumentError(f"{where}: {exc}") from None


def from_json(data: Any) -> Document:
    if not isinstance(data, dict):
        raise DocumentError("document: expected a JSON object")
    extra = data.keys() - TOP_KEYS
    if extra:
        raise DocumentError(f"document: unknown keys {sorted(extra)}")
    if data.get("scalar_field") != "rational":
        raise DocumentError('document: "scalar_field" must be "rational"')
    if "symplectic_space" not in data:
        raise DocumentError('document: missing "symplectic_space"')
    V = _space(data["symplectic_space"], "symplectic_space")

    pair = None
    if "pair" in data:
        d = _obj(data["pair"], "pair", {"dim_k", "dim_p", "brackets", "omega"})
        dk, dp = _int(d, "dim_k", "pair"), _int(d, "dim_p", "pair")
        n = dk + dp
        table = _sparse(d["brackets"], "pair.brackets", n, n, strict_upper=True)
        omega = parse_matrix(d["omega"], "pair.omega", dp, dp)
        try:
            pair = SymplecticSymmetricPair(SymmetricPair(LieAlgebra.from_table(n, table), dk, dp), omega)
        except (PairError, ValueError) as exc:
            raise DocumentError(f"pair: {exc}") from None

    morphism = None
    if "morphism" in data:
        if pair is None:
            raise DocumentError('morphism: requires a "pair"')
        d = _obj(data["morphism"], "morphism", {"Lambda", "tau"})
        n, g = V.dim, pair.algebra.dim
        if not isinstance(d["Lambda"], list) or len(d["Lambda"]) != g:
            raise DocumentError(f"morphism.Lambda: expected {g} matrices")
        Lambda = tuple(parse_matrix(M, f"morphism.Lambda[{i}]", n, n) for i, M in enumerate(d["Lambda"]))
        tau = parse_matrix(d["tau"], "morphism.tau", n, g)
        morphism = ExtrinsicMorphism(pair, V, Lambda, tau)

    alpha = None
    if "alpha" in data:
        d = _obj(data["alpha"], "alpha", {"dim_w1", "dim_w2", "gram_w1", "gram_w2", "tensor"})
        d1, d2 = _int(d, "dim_w1", "alpha"), _int(d, "dim_w2", "alpha")
        spaces = []
        for key, dim in (("gram_w1", d1), ("gram_w2", d2)):
            G = parse_matrix(d[key], f"alpha.{key}", dim, dim)
            try:
                spaces.append(SymplecticSpace(G))
            except SymplecticError as exc:
                raise DocumentError(f"alpha.{key}: {exc}") from None
        entries = _sparse(d["tensor"], "alpha.tensor", d1, d2, strict_upper=False)
        try:
            alpha = FundamentalFormData.from_entries(spaces[0], spaces[1], entries)
        except ValueError as exc:
            raise DocumentError(f"alpha: {exc}") from None
        if alpha.space != V:
            raise DocumentError("alpha: symplectic_space must be the block sum of gram_w1 and gram_w2")
    return Document(V, pair, morphism, alpha)


def to_json(doc: Document) -> dict:
    out: dict[str, Any] = {
        "scalar_field": "rational",
        "symplectic_space": {"dim": doc.space.dim, "gram": format_matrix(doc.space.gram)},
    }
    if doc.pair is not None:
        P = doc.pair
        L = P.algebra
        brackets = [
            [i, j, [format_scalar(x) for x in L.brackets[i][j]]]
            for i, j in combinations(range(L.dim), 2)
            if any(L.brackets[i][j])
        ]
        out["pair"] = {"dim_k": P.dim_k, "dim_p": P.dim_p, "brackets": brackets, "omega": format_matrix(P.omega)}
    if doc.morphism is not None:
        m = doc.morphism
        out["morphism"] = {"Lambda": [format_matrix(M) for M in m.Lambda], "tau": format_matrix(m.tau)}
    if doc.alpha is not None:
        a = doc.alpha
        d1 = a.w1.dim
        tensor = [
            [i, j, [format_scalar(x) for x in a.alpha[i][j]]]
            for i in range(d1)
            for j in range(i, d1)
            if any(a.alpha[i][j])
        ]
        out["alpha"] = {
            "dim_w1": d1,
            "dim_w2": a.w2.dim,
            "gram_w1": format_matrix(a.w1.gram),
            "gram_w2": format_matrix(a.w2.gram),
            "tensor": tensor,
        }
    return out


def dumps(doc: Document) -> str:
    return json.dumps(to_json(doc), indent=2) + "\n"


def loads(text: str) -> Document:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"not valid JSON: {exc}") from None
    return from_json(data)


def load(path: str | Path) -> Document:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise DocumentError(f"cannot read {path}: {exc}") from None
    return loads(text)


def save(doc: Document, path: str | Path) -> None:
    Path(path).write_text(dumps(doc), encoding="utf-8")
