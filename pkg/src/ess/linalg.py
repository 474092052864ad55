"""Exact dense linear algebra over the rationals.

Everything here is built on :class:`fractions.Fraction`; no tolerances are
used anywhere, so ranks and kernels are decided exactly.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

Vector = tuple[Fraction, ...]


class LinAlgError(ValueError):
    """Shape mismatch, singular system or similar misuse."""


def frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floats are not accepted; pass int, Fraction or 'p/q'")
    return Fraction(x)


def vec(xs: Iterable) -> Vector:
    return tuple(frac(x) for x in xs)


def zeros_vec(n: int) -> Vector:
    return (Fraction(0),) * n


def is_zero_vec(v: Sequence[Fraction]) -> bool:
    return all(x == 0 for x in v)


def dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    if len(u) != len(v):
        raise LinAlgError(f"length mismatch {len(u)} vs {len(v)}")
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def vadd(u, v) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def vsub(u, v) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def vscale(c, v) -> Vector:
    c = frac(c)
    return tuple(c * a for a in v)


class Matrix:
    """Immutable rectangular matrix of Fractions."""

    __slots__ = ("rows", "cols", "_e", "_hash")

    def __init__(self, entries: Iterable[Iterable], cols: int | None = None):
        e = tuple(tuple(frac(x) for x in row) for row in entries)
        if e:
            c = len(e[0])
            if any(len(r) != c for r in e):
                raise LinAlgError("ragged matrix")
            if cols is not None and cols != c:
                raise LinAlgError("column count mismatch")
        else:
            c = cols or 0
        self.rows = len(e)
        self.cols = c
        self._e = e
        self._hash = None

    # construction helpers
    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        z = Fraction(0)
        return cls(((z,) * cols for _ in range(rows)), cols=cols)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(((1 if i == j else 0) for j in range(n)) for i in range(n)) if n else cls((), cols=0)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int | None = None) -> "Matrix":
        columns = [vec(c) for c in columns]
        if not columns:
            return cls.zeros(rows or 0, 0)
        n = len(columns[0])
        if rows is not None and rows != n:
            raise LinAlgError("row count mismatch")
        return cls((columns[j][i] for j in range(len(columns))) for i in range(n))

    @classmethod
    def diag_blocks(cls, *blocks: "Matrix") -> "Matrix":
        n = sum(b.rows for b in blocks)
        m = sum(b.cols for b in blocks)
        out = [[Fraction(0)] * m for _ in range(n)]
        r0 = c0 = 0
        for b in blocks:
            for i in range(b.rows):
                for j in range(b.cols):
                    out[r0 + i][c0 + j] = b._e[i][j]
            r0 += b.rows
            c0 += b.cols
        return cls(out, cols=m)

    @classmethod
    def hstack(cls, *ms: "Matrix") -> "Matrix":
        ms = [m for m in ms]
        rows = ms[0].rows
        if any(m.rows != rows for m in ms):
            raise LinAlgError("hstack row mismatch")
        return cls((sum((m._e[i] for m in ms), ()) for i in range(rows)), cols=sum(m.cols for m in ms))

    @classmethod
    def vstack(cls, *ms: "Matrix") -> "Matrix":
        cols = ms[0].cols
        if any(m.cols != cols for m in ms):
            raise LinAlgError("vstack column mismatch")
        return cls((r for m in ms for r in m._e), cols=cols)

    # access
    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, ij):
        i, j = ij
        return self._e[i][j]

    def row(self, i: int) -> Vector:
        return self._e[i]

    def col(self, j: int) -> Vector:
        return tuple(r[j] for r in self._e)

    def columns(self) -> list[Vector]:
        return [self.col(j) for j in range(self.cols)]

    def tolists(self) -> list[list[Fraction]]:
        return [list(r) for r in self._e]

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_zero(self) -> bool:
        return all(x == 0 for r in self._e for x in r)

    def flatten(self) -> Vector:
        return tuple(x for r in self._e for x in r)

    @classmethod
    def unflatten(cls, v: Sequence, rows: int, cols: int) -> "Matrix":
        return cls((v[i * cols:(i + 1) * cols] for i in range(rows)), cols=cols)

    # arithmetic
    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self._e == other._e

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.rows, self.cols, self._e))
        return self._hash

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in r) for r in self._e)
        return f"Matrix({self.rows}x{self.cols}: [{body}])"

    def _check_same(self, other: "Matrix"):
        if self.shape != other.shape:
            raise LinAlgError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_same(other)
        return Matrix((tuple(a + b for a, b in zip(r, s)) for r, s in zip(self._e, other._e)), cols=self.cols)

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check_same(other)
        return Matrix((tuple(a - b for a, b in zip(r, s)) for r, s in zip(self._e, other._e)), cols=self.cols)

    def __neg__(self) -> "Matrix":
        return Matrix((tuple(-a for a in r) for r in self._e), cols=self.cols)

    def scale(self, c) -> "Matrix":
        c = frac(c)
        return Matrix((tuple(c * a for a in r) for r in self._e), cols=self.cols)

    def __rmul__(self, c):
        return self.scale(c)

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.cols != other.rows:
                raise LinAlgError(f"cannot multiply {self.shape} by {other.shape}")
            ocols = other.columns()
            return Matrix(
                (tuple(sum((a * b for a, b in zip(r, c) if a and b), Fraction(0)) for c in ocols) for r in self._e),
                cols=other.cols,
            )
        v = tuple(other)
        if len(v) != self.cols:
            raise LinAlgError(f"cannot apply {self.shape} to vector of length {len(v)}")
        return tuple(sum((a * b for a, b in zip(r, v) if a and b), Fraction(0)) for r in self._e)

    @property
    def T(self) -> "Matrix":
        return Matrix(zip(*self._e), cols=self.rows) if self.rows else Matrix.zeros(self.cols, 0)

    def commutator(self, other: "Matrix") -> "Matrix":
        return self @ other - other @ self

    def is_skew(self) -> bool:
        return self.is_square() and self == -self.T

    def is_symmetric(self) -> bool:
        return self.is_square() and self == self.T

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Matrix":
        return Matrix((tuple(self._e[i][j] for j in cols) for i in rows), cols=len(cols))

    # elimination
    def rref(self) -> tuple["Matrix", tuple[int, ...]]:
        """Reduced row echelon form and pivot columns (first nonzero pivot)."""
        m = [list(r) for r in self._e]
        pivots = []
        r = 0
        for c in range(self.cols):
            if r >= self.rows:
                break
            p = next((i for i in range(r, self.rows) if m[i][c] != 0), None)
            if p is None:
                continue
            m[r], m[p] = m[p], m[r]
            inv = 1 / m[r][c]
            m[r] = [x * inv for x in m[r]]
            for i in range(self.rows):
                if i != r and m[i][c] != 0:
                    f = m[i][c]
                    m[i] = [a - f * b for a, b in zip(m[i], m[r])]
            pivots.append(c)
            r += 1
        return Matrix(m, cols=self.cols), tuple(pivots)

    def rank(self) -> int:
        return len(self.rref()[1])

    def kernel(self) -> "Matrix":
        """Columns spanning the right null space, in canonical form."""
        R, piv = self.rref()
        free = [c for c in range(self.cols) if c not in piv]
        basis = []
        for f in free:
            v = [Fraction(0)] * self.cols
            v[f] = Fraction(1)
            for i, pc in enumerate(piv):
                v[pc] = -R[i, f]
            basis.append(v)
        return Matrix.from_columns(basis, rows=self.cols)

    def solve(self, b) -> Vector | None:
        """One solution x of self @ x = b, or None if inconsistent.

        The free variables are set to zero, so the answer is deterministic.
        """
        b = vec(b)
        if len(b) != self.rows:
            raise LinAlgError("right-hand side length mismatch")
        aug = Matrix.hstack(self, Matrix.from_columns([b], rows=self.rows))
        R, piv = aug.rref()
        if piv and piv[-1] == self.cols:
            return None
        x = [Fraction(0)] * self.cols
        for i, pc in enumerate(piv):
            x[pc] = R[i, self.cols]
        return tuple(x)

    def solve_matrix(self, B: "Matrix") -> "Matrix | None":
        cols = []
        for c in B.columns():
            x = self.solve(c)
            if x is None:
                return None
            cols.append(x)
        return Matrix.from_columns(cols, rows=self.cols)

    def inverse(self) -> "Matrix":
        if not self.is_square():
            raise LinAlgError("inverse of non-square matrix")
        n = self.rows
        R, piv = Matrix.hstack(self, Matrix.identity(n)).rref()
        if piv[:n] != tuple(range(n)) or len(piv) < n:
            raise LinAlgError("matrix is singular")
        return R.submatrix(range(n), range(n, 2 * n))

    def det(self) -> Fraction:
        if not self.is_square():
            raise LinAlgError("determinant of non-square matrix")
        m = [list(r) for r in self._e]
        n = self.rows
        d = Fraction(1)
        for c in range(n):
            p = next((i for i in range(c, n) if m[i][c] != 0), None)
            if p is None:
                return Fraction(0)
            if p != c:
                m[c], m[p] = m[p], m[c]
                d = -d
            d *= m[c][c]
            for i in range(c + 1, n):
                if m[i][c]:
                    f = m[i][c] / m[c][c]
                    m[i] = [a - f * b for a, b in zip(m[i], m[c])]
        return d

    def is_invertible(self) -> bool:
        return self.is_square() and self.rank() == self.rows


class Subspace:
    """Column span inside Q^n, canonicalised to reduced column echelon form.

    Two subspaces compare equal iff their spans coincide.
    """

    __slots__ = ("ambient_dim", "basis")

    def __init__(self, ambient_dim: int, vectors: Iterable[Sequence] = ()):
        vectors = [vec(v) for v in vectors]
        for v in vectors:
            if len(v) != ambient_dim:
                raise LinAlgError(f"vector of length {len(v)} in ambient dimension {ambient_dim}")
        if vectors:
            R, piv = Matrix(vectors, cols=ambient_dim).rref()
            cols = [R.row(i) for i in range(len(piv))]
        else:
            cols = []
        self.ambient_dim = ambient_dim
        self.basis = Matrix.from_columns(cols, rows=ambient_dim)

    @classmethod
    def span(cls, m: Matrix) -> "Subspace":
        return cls(m.rows, m.columns())

    @classmethod
    def whole(cls, n: int) -> "Subspace":
        return cls(n, Matrix.identity(n).columns())

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n)

    @property
    def dim(self) -> int:
        return self.basis.cols

    def vectors(self) -> list[Vector]:
        return self.basis.columns()

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.basis == other.basis

    def __hash__(self):
        return hash((self.ambient_dim, self.basis))

    def __repr__(self):
        return f"Subspace(dim={self.dim} in Q^{self.ambient_dim})"

    def _check(self, other: "Subspace"):
        if self.ambient_dim != other.ambient_dim:
            raise LinAlgError("subspaces live in different ambient spaces")

    def __add__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace(self.ambient_dim, self.vectors() + other.vectors())

    def intersect(self, other: "Subspace") -> "Subspace":
        self._check(other)
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(self.ambient_dim)
        # a = B1 s = B2 t  <=>  [B1 | -B2] (s, t) = 0
        K = Matrix.hstack(self.basis, -other.basis).kernel()
        return Subspace(self.ambient_dim, (self.basis @ K.col(j)[: self.dim] for j in range(K.cols)))

    def contains(self, v: Sequence) -> bool:
        v = vec(v)
        if len(v) != self.ambient_dim:
            raise LinAlgError("vector length mismatch")
        return Subspace(self.ambient_dim, self.vectors() + [v]).dim == self.dim

    def contains_space(self, other: "Subspace") -> bool:
        self._check(other)
        return (self + other).dim == self.dim

    def coordinates(self, v: Sequence) -> Vector:
        """Coordinates of v in the canonical basis; raises if v is outside."""
        x = self.basis.solve(v)
        if x is None:
            raise LinAlgError("vector not in subspace")
        return x

    def image(self, A: Matrix) -> "Subspace":
        return Subspace(A.rows, (A @ v for v in self.vectors()))

    def is_invariant_under(self, A: Matrix) -> bool:
        return all(self.contains(A @ v) for v in self.vectors())
