"""Lie algebras by structure constants and the affine symplectic algebra asp(V, Omega)."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Callable, Sequence

from .linalg import Matrix, Subspace, Vector, vadd, vec, vsub, zeros_vec
from .symplectic_core import SymplecticSpace, sp_membership


class InternalError(AssertionError):
    """An identity that must hold by construction was violated."""


@dataclass(frozen=True)
class LieAlgebra:
    """Structure constants: ``brackets[i][j]`` holds the coordinates of [b_i, b_j]."""

    brackets: tuple[tuple[Vector, ...], ...]

    def __post_init__(self):
        n = len(self.brackets)
        for i, row in enumerate(self.brackets):
            if len(row) != n:
                raise ValueError("bracket table is not square")
            for j, v in enumerate(row):
                if len(v) != n:
                    raise ValueError(f"bracket [{i},{j}] has {len(v)} coordinates, expected {n}")
        for i in range(n):
            for j in range(n):
                if self.brackets[i][j] != tuple(-x for x in self.brackets[j][i]):
                    raise ValueError(f"bracket table not antisymmetric at ({i},{j})")

    @classmethod
    def from_table(cls, dim: int, table: dict[tuple[int, int], Sequence]) -> "LieAlgebra":
        """Build from a sparse table {(i, j): coords} with i < j; the rest is implied."""
        b = [[zeros_vec(dim) for _ in range(dim)] for _ in range(dim)]
        for (i, j), v in table.items():
            v = vec(v)
            b[i][j] = v
            b[j][i] = tuple(-x for x in v)
        return cls(tuple(tuple(r) for r in b))

    @classmethod
    def abelian(cls, dim: int) -> "LieAlgebra":
        return cls.from_table(dim, {})

    @property
    def dim(self) -> int:
        return len(self.brackets)

    def bracket(self, u: Sequence, v: Sequence) -> Vector:
        out = [Fraction(0)] * self.dim
        for i, a in enumerate(u):
            if not a:
                continue
            for j, b in enumerate(v):
                if not b:
                    continue
                c = a * b
                for k, x in enumerate(self.brackets[i][j]):
                    if x:
                        out[k] += c * x
        return tuple(out)

    def basis_vector(self, i: int) -> Vector:
        return tuple(Fraction(int(k == i)) for k in range(self.dim))

    def ad(self, i: int) -> Matrix:
        """Matrix of ad_{b_i} on the whole algebra."""
        return Matrix.from_columns([self.brackets[i][j] for j in range(self.dim)], rows=self.dim)


def jacobi_check(L: LieAlgebra) -> list[tuple[int, int, int]]:
    """Basis triples (i < j < k) on which the cyclic Jacobi sum is nonzero."""
    bad = []
    for i, j, k in combinations(range(L.dim), 3):
        ei, ej, ek = L.basis_vector(i), L.basis_vector(j), L.basis_vector(k)
        s = vadd(vadd(L.bracket(ei, L.brackets[j][k]), L.bracket(ej, L.brackets[k][i])), L.bracket(ek, L.brackets[i][j]))
        if any(s):
            bad.append((i, j, k))
    return bad


@dataclass(frozen=True)
class AspElement:
    """A + v in sp(V, Omega) + V, acting as the affine vector field x -> A x + v."""

    linear: Matrix
    translation: Vector

    @classmethod
    def zero(cls, n: int) -> "AspElement":
        return cls(Matrix.zeros(n, n), zeros_vec(n))

    @classmethod
    def pure_linear(cls, A: Matrix) -> "AspElement":
        return cls(A, zeros_vec(A.rows))

    @classmethod
    def pure_translation(cls, v: Sequence) -> "AspElement":
        v = vec(v)
        return cls(Matrix.zeros(len(v), len(v)), v)

    @property
    def n(self) -> int:
        return self.linear.rows

    def __add__(self, other: "AspElement") -> "AspElement":
        return AspElement(self.linear + other.linear, vadd(self.translation, other.translation))

    def __sub__(self, other: "AspElement") -> "AspElement":
        return AspElement(self.linear - other.linear, vsub(self.translation, other.translation))

    def scale(self, c) -> "AspElement":
        return AspElement(self.linear.scale(c), tuple(Fraction(c) * x for x in self.translation))

    def flatten(self) -> Vector:
        return self.linear.flatten() + tuple(self.translation)

    @classmethod
    def unflatten(cls, v: Sequence, n: int) -> "AspElement":
        return cls(Matrix.unflatten(v[: n * n], n, n), tuple(v[n * n:]))

    def in_sp(self, V: SymplecticSpace) -> bool:
        return sp_membership(V, self.linear)

    def is_zero(self) -> bool:
        return self.linear.is_zero() and not any(self.translation)


def asp_bracket(a: AspElement, b: AspElement) -> AspElement:
    """[A + v, B + w] = [A, B] + (A w - B v)."""
    if a.n != b.n:
        raise ValueError("asp elements from different ambient spaces")
    return AspElement(a.linear.commutator(b.linear), vsub(a.linear @ b.translation, b.linear @ a.translation))


def closure(
    bracket: Callable,
    generators: Sequence,
    flatten: Callable = AspElement.flatten,
    unflatten: Callable | None = None,
    ambient_dim: int | None = None,
) -> list:
    """Basis of the smallest bracket-closed subspace containing the generators.

    Elements are mapped to coordinate vectors by ``flatten``; the returned
    basis is the canonical echelon basis of that span, mapped back through
    ``unflatten`` (for AspElements the default is inferred from the first
    generator).
    """
    generators = list(generators)
    if not generators:
        return []
    if unflatten is None:
        n = generators[0].n
        unflatten = lambda v: AspElement.unflatten(v, n)  # noqa: E731
    N = len(flatten(generators[0]))
    cap = ambient_dim if ambient_dim is not None else N
    span = Subspace(N, [flatten(g) for g in generators])
    for _ in range(cap + 1):
        elems = [unflatten(v) for v in span.vectors()]
        new = [flatten(bracket(x, y)) for x, y in combinations(elems, 2)]
        grown = Subspace(N, span.vectors() + new)
        if grown.dim == span.dim:
            return elems
        span = grown
    raise InternalError("closure did not stabilise within the dimension cap")


@dataclass(frozen=True)
class LinearLieMap:
    """Coordinates of the source mapped to coordinates of a target algebra."""

    source: LieAlgebra
    matrix: Matrix


def is_homomorphism(f: LinearLieMap, target_bracket: Callable[[Vector, Vector], Vector]) -> bool:
    """f[b_i, b_j] == [f b_i, f b_j] on all basis pairs."""
    L = f.source
    if f.matrix.cols != L.dim:
        raise ValueError("map does not match the source dimension")
    images = f.matrix.columns()
    for i, j in combinations(range(L.dim), 2):
        if f.matrix @ L.brackets[i][j] != tuple(target_bracket(images[i], images[j])):
            return False
    return True


def lower_central_series(L: LieAlgebra) -> list[int]:
    """Dimensions of g, [g,g], [g,[g,g]], ... until it stabilises."""
    dims = [L.dim]
    current = Subspace.whole(L.dim)
    while True:
        nxt = Subspace(
            L.dim,
            [L.bracket(L.basis_vector(i), v) for i in range(L.dim) for v in current.vectors()],
        )
        if nxt.dim == current.dim:
            return dims
        dims.append(nxt.dim)
        current = nxt
        if nxt.dim == 0:
            return dims


def nilpotency_class(L: LieAlgebra) -> int | None:
    """Length of the lower central series if L is nilpotent, else None."""
    dims = lower_central_series(L)
    if dims[-1] != 0:
        return None
    return len(dims) - 1 if L.dim else 0
