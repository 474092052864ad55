"""Symplectic vector spaces, complements, reflections and reduction."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .linalg import LinAlgError, Matrix, Subspace, Vector, dot, vec

__all__ = [
    "SymplecticError",
    "SymplecticSpace",
    "AffineSymplecticMap",
    "QuotientPresentation",
    "omega_complement",
    "is_nondegenerate",
    "reflection",
    "sp_membership",
    "circ",
    "symplectic_quotient",
    "standard_gram",
]


class SymplecticError(ValueError):
    pass


def standard_gram(n: int) -> Matrix:
    """Gram matrix of the standard form on Q^{2n} in the basis (e_1..e_n, f_1..f_n)."""
    rows = [[0] * (2 * n) for _ in range(2 * n)]
    for i in range(n):
        rows[i][n + i] = 1
        rows[n + i][i] = -1
    return Matrix(rows, cols=2 * n)


@dataclass(frozen=True)
class SymplecticSpace:
    gram: Matrix

    def __post_init__(self):
        g = self.gram
        if not g.is_square():
            raise SymplecticError("gram not square")
        if not g.is_skew():
            raise SymplecticError("gram not skew-symmetric")
        if g.rows % 2:
            raise SymplecticError("gram has odd dimension")
        if not g.is_invertible():
            raise SymplecticError("gram is degenerate")

    @classmethod
    def standard(cls, n: int) -> "SymplecticSpace":
        return cls(standard_gram(n))

    @property
    def dim(self) -> int:
        return self.gram.rows

    def form(self, u: Sequence, v: Sequence) -> Fraction:
        return dot(u, self.gram @ vec(v))

    def restricted_gram(self, W: Subspace) -> Matrix:
        self._check(W)
        B = W.basis
        return B.T @ self.gram @ B

    def _check(self, W: Subspace):
        if W.ambient_dim != self.dim:
            raise SymplecticError(f"subspace of Q^{W.ambient_dim} used in a space of dimension {self.dim}")

    def is_symplectic_map(self, g: Matrix) -> bool:
        return g.shape == self.gram.shape and g.T @ self.gram @ g == self.gram

    def direct_sum(self, other: "SymplecticSpace") -> "SymplecticSpace":
        return SymplecticSpace(Matrix.diag_blocks(self.gram, other.gram))


def omega_complement(V: SymplecticSpace, W: Subspace) -> Subspace:
    """{v : Omega(v, w) = 0 for all w in W}."""
    V._check(W)
    if W.dim == 0:
        return Subspace.whole(V.dim)
    # Omega(v, w) = v^T G w, so v must be killed by (G W)^T
    return Subspace.span((V.gram @ W.basis).T.kernel())


def is_nondegenerate(V: SymplecticSpace, W: Subspace) -> bool:
    return V.restricted_gram(W).is_invertible()


@dataclass(frozen=True)
class AffineSymplecticMap:
    """v -> linear @ v + translation."""

    linear: Matrix
    translation: Vector

    def __call__(self, v: Sequence) -> Vector:
        w = self.linear @ vec(v)
        return tuple(a + b for a, b in zip(w, self.translation))

    def compose(self, other: "AffineSymplecticMap") -> "AffineSymplecticMap":
        return AffineSymplecticMap(self.linear @ other.linear, self(other.translation))

    def inverse(self) -> "AffineSymplecticMap":
        Li = self.linear.inverse()
        return AffineSymplecticMap(Li, tuple(-x for x in Li @ self.translation))

    @classmethod
    def identity(cls, n: int) -> "AffineSymplecticMap":
        return cls(Matrix.identity(n), (Fraction(0),) * n)

    def is_symplectic(self, V: SymplecticSpace) -> bool:
        return V.is_symplectic_map(self.linear)


def reflection(V: SymplecticSpace, W: Subspace, p: Sequence) -> AffineSymplecticMap:
    """The affine involution fixing p that is -1 on W and +1 on its complement."""
    p = vec(p)
    if len(p) != V.dim:
        raise SymplecticError("base point has the wrong length")
    if not is_nondegenerate(V, W):
        raise SymplecticError("reflection subspace is degenerate")
    Wp = omega_complement(V, W)
    B = Matrix.hstack(W.basis, Wp.basis)
    D = Matrix.diag_blocks(-Matrix.identity(W.dim), Matrix.identity(Wp.dim))
    L = B @ D @ B.inverse()
    # sigma(v) = L (v - p) + p
    Lp = L @ p
    return AffineSymplecticMap(L, tuple(a - b for a, b in zip(p, Lp)))


def sp_membership(V: SymplecticSpace, A: Matrix) -> bool:
    if A.shape != V.gram.shape:
        raise SymplecticError(f"matrix of shape {A.shape} tested against a space of dimension {V.dim}")
    G = V.gram
    return (G @ A + A.T @ G).is_zero()


def circ(V: SymplecticSpace, x: Sequence, y: Sequence) -> Matrix:
    """Matrix of z -> Omega(x, z) y + Omega(y, z) x."""
    x, y = vec(x), vec(y)
    if len(x) != V.dim or len(y) != V.dim:
        raise SymplecticError("vector length mismatch in circ")
    gx = V.gram.T @ x  # row functional z -> x^T G z
    gy = V.gram.T @ y
    n = V.dim
    return Matrix(((y[i] * gx[j] + x[i] * gy[j] for j in range(n)) for i in range(n)), cols=n)


@dataclass(frozen=True)
class QuotientPresentation:
    """Symplectic reduction V' / N of a subspace V'.

    ``projection`` and ``section`` act on coordinates with respect to the
    canonical basis of ``source``; use :meth:`source_coordinates` to get
    there from ambient vectors.
    """

    source: Subspace
    null: Subspace
    reduced: SymplecticSpace
    projection: Matrix
    section: Matrix
    restricted_gram: Matrix = field(repr=False)

    @property
    def reduced_dim(self) -> int:
        return self.projection.rows

    @property
    def reduced_gram(self) -> Matrix:
        return self.reduced.gram

    def source_coordinates(self, v: Sequence) -> Vector:
        return self.source.coordinates(v)

    def project(self, v: Sequence) -> Vector:
        """pi(v) for an ambient vector v lying in V'."""
        return self.projection @ self.source_coordinates(v)

    @property
    def section_ambient(self) -> Matrix:
        return self.source.basis @ self.section

    def check(self) -> list[str]:
        problems = []
        r = self.reduced_dim
        m = self.source.dim
        if self.projection @ self.section != Matrix.identity(r):
            problems.append("projection o section is not the identity")
        null_coords = Matrix.from_columns([self.source_coordinates(v) for v in self.null.vectors()], rows=m)
        if null_coords.cols and not (self.projection @ null_coords).is_zero():
            problems.append("projection does not vanish on the null space")
        if self.projection.rank() != r:
            problems.append("projection is not surjective")
        if m - r != self.null.dim:
            problems.append("kernel of projection has the wrong dimension")
        if self.projection.T @ self.reduced_gram @ self.projection != self.restricted_gram:
            problems.append("pullback of the reduced form differs from the restricted form")
        return problems


def symplectic_quotient(V: SymplecticSpace, Vprime: Subspace) -> QuotientPresentation:
    V._check(Vprime)
    G = V.restricted_gram(Vprime)
    m = Vprime.dim
    N_coords = G.kernel()
    null = Subspace(V.dim, (Vprime.basis @ c for c in N_coords.columns()))
    # complement: the first coordinate directions of V' that stay independent modulo N
    chosen: list[int] = []
    span = Subspace(m, N_coords.columns())
    for j in range(m):
        e = tuple(Fraction(1 if i == j else 0) for i in range(m))
        if not span.contains(e):
            chosen.append(j)
            span = span + Subspace(m, [e])
    r = len(chosen)
    S = Matrix.from_columns([[1 if i == j else 0 for i in range(m)] for j in chosen], rows=m)
    if m:
        full = Matrix.hstack(S, N_coords)
        P = full.inverse().submatrix(range(r), range(m))
    else:
        P = Matrix.zeros(0, 0)
    reduced_gram = S.T @ G @ S
    reduced = SymplecticSpace(reduced_gram)
    q = QuotientPresentation(Vprime, null, reduced, P, S, G)
    problems = q.check()
    if problems:
        raise LinAlgError("symplectic reduction failed: " + "; ".join(problems))
    return q
