"""Symmetric pairs, their curvature and its bivector presentation.

Basis convention: the first ``dim_k`` basis vectors of the algebra span k,
the remaining ``dim_p`` span p.  Curvature bivectors use the half-normalised
identification

    R_{A ^ B}(x, y) = 1/2 ((Ax) o (By) - (Ay) o (Bx)),

with (x o y) z = w(x, z) y + w(y, z) x.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations

from .lie_core import InternalError, LieAlgebra, jacobi_check
from .linalg import Matrix, Vector, vec
from .symplectic_core import SymplecticError, SymplecticSpace, circ, sp_membership


class PairError(ValueError):
    """The supplied data is not a (symplectic) symmetric pair."""


class NotACurvature(ValueError):
    """The operator violates the first Bianchi identity."""


@dataclass(frozen=True)
class SymmetricPair:
    algebra: LieAlgebra
    dim_k: int
    dim_p: int

    def __post_init__(self):
        if self.dim_k + self.dim_p != self.algebra.dim:
            raise PairError(f"dim_k + dim_p = {self.dim_k + self.dim_p} but the algebra has dimension {self.algebra.dim}")
        problems = grading_violations(self.algebra, self.dim_k)
        if problems:
            raise PairError("grading violated: " + "; ".join(problems[:5]))
        bad = jacobi_check(self.algebra)
        if bad:
            raise PairError(f"Jacobi identity fails on basis triples {bad[:5]}")

    @property
    def k_indices(self) -> range:
        return range(self.dim_k)

    @property
    def p_indices(self) -> range:
        return range(self.dim_k, self.dim_k + self.dim_p)

    def p_part(self, v: Vector) -> Vector:
        return tuple(v[self.dim_k:])

    def k_part(self, v: Vector) -> Vector:
        return tuple(v[: self.dim_k])

    def ad_k_on_p(self) -> list[Matrix]:
        """Matrices of ad_{k_a} restricted to p, one per basis vector of k."""
        b = self.algebra.brackets
        return [
            Matrix.from_columns([self.p_part(b[a][j]) for j in self.p_indices], rows=self.dim_p)
            for a in self.k_indices
        ]

    def bracket_pp(self, i: int, j: int) -> Vector:
        """k-coordinates of [x_i, x_j] for p-indices i, j counted from 0."""
        return self.k_part(self.algebra.brackets[self.dim_k + i][self.dim_k + j])


def grading_violations(L: LieAlgebra, dim_k: int) -> list[str]:
    problems = []
    n = L.dim
    for i in range(n):
        for j in range(i, n):
            v = L.brackets[i][j]
            i_k, j_k = i < dim_k, j < dim_k
            # [k,k] and [p,p] land in k, [k,p] lands in p
            target_k = i_k == j_k
            bad = [c for c in range(n) if v[c] and ((c < dim_k) != target_k)]
            if bad:
                where = "k" if target_k else "p"
                problems.append(f"[b{i}, b{j}] has components {bad} outside {where}")
    return problems


@dataclass(frozen=True)
class SymplecticSymmetricPair:
    pair: SymmetricPair
    omega: Matrix

    def __post_init__(self):
        if self.omega.shape != (self.pair.dim_p, self.pair.dim_p):
            raise PairError(f"omega has shape {self.omega.shape}, expected {(self.pair.dim_p,) * 2}")
        try:
            SymplecticSpace(self.omega)
        except SymplecticError as exc:
            raise PairError(f"omega: {exc}") from None
        for a, ad in enumerate(self.pair.ad_k_on_p()):
            if not sp_membership(self.p_space, ad):
                raise PairError(f"omega is not invariant under ad of k-basis vector {a}")

    @property
    def p_space(self) -> SymplecticSpace:
        return SymplecticSpace(self.omega)

    @property
    def dim_k(self) -> int:
        return self.pair.dim_k

    @property
    def dim_p(self) -> int:
        return self.pair.dim_p

    @property
    def algebra(self) -> LieAlgebra:
        return self.pair.algebra


def change_p_basis(P: SymplecticSymmetricPair, T: Matrix) -> SymplecticSymmetricPair:
    """Re-express the pair in the p-basis x'_i = sum_l T[l, i] x_l."""
    M = Matrix.diag_blocks(Matrix.identity(P.dim_k), T)
    Mi = M.inverse()
    L = P.algebra
    cols = M.columns()
    n = L.dim
    table = {}
    for i, j in combinations(range(n), 2):
        table[(i, j)] = Mi @ L.bracket(cols[i], cols[j])
    new = SymmetricPair(LieAlgebra.from_table(n, table), P.dim_k, P.dim_p)
    return SymplecticSymmetricPair(new, T.T @ P.omega @ T)


@dataclass(frozen=True)
class CurvatureOperator:
    """values[i][j] is the matrix of R(x_i, x_j) acting on p."""

    space: SymplecticSpace
    values: tuple[tuple[Matrix, ...], ...]

    @property
    def dim(self) -> int:
        return self.space.dim

    def __call__(self, x, y) -> Matrix:
        x, y = vec(x), vec(y)
        out = Matrix.zeros(self.dim, self.dim)
        for i in range(self.dim):
            for j in range(self.dim):
                c = x[i] * y[j]
                if c and i != j:
                    out = out + self.values[i][j].scale(c)
        return out

    def is_zero(self) -> bool:
        return all(m.is_zero() for row in self.values for m in row)

    def check(self) -> list[str]:
        problems = []
        for i in range(self.dim):
            for j in range(self.dim):
                if self.values[i][j] != -self.values[j][i]:
                    problems.append(f"R({i},{j}) != -R({j},{i})")
                if not sp_membership(self.space, self.values[i][j]):
                    problems.append(f"R({i},{j}) not in sp")
        return problems


def _operator_from_pairs(space: SymplecticSpace, upper: dict[tuple[int, int], Matrix]) -> CurvatureOperator:
    n = space.dim
    z = Matrix.zeros(n, n)
    vals = [[z] * n for _ in range(n)]
    for (i, j), m in upper.items():
        vals[i][j] = m
        vals[j][i] = -m
    return CurvatureOperator(space, tuple(tuple(r) for r in vals))


def curvature(P: SymplecticSymmetricPair) -> CurvatureOperator:
    """R(x_i, x_j) = -ad_{[x_i, x_j]} restricted to p."""
    ads = P.pair.ad_k_on_p()
    n = P.dim_p
    upper = {}
    for i, j in combinations(range(n), 2):
        c = P.pair.bracket_pp(i, j)
        m = Matrix.zeros(n, n)
        for a, ca in enumerate(c):
            if ca:
                m = m - ads[a].scale(ca)
        upper[(i, j)] = m
    return _operator_from_pairs(P.p_space, upper)


def bianchi_violations(R: CurvatureOperator) -> list[tuple[int, int, int]]:
    n = R.dim
    e = Matrix.identity(n).columns()
    bad = []
    for i, j, k in combinations(range(n), 3):
        s = [a + b + c for a, b, c in zip(R.values[i][j] @ e[k], R.values[j][k] @ e[i], R.values[k][i] @ e[j])]
        if any(s):
            bad.append((i, j, k))
    return bad


def bianchi_check(R: CurvatureOperator) -> bool:
    return not bianchi_violations(R)


def equivariance_violations(P: SymplecticSymmetricPair, R: CurvatureOperator) -> list[tuple[int, int, int]]:
    """Triples (a, i, j) where [ad_k_a, R(x_i, x_j)] != R(ad_k_a x_i, x_j) + R(x_i, ad_k_a x_j)."""
    n = R.dim
    e = Matrix.identity(n).columns()
    bad = []
    for a, ad in enumerate(P.pair.ad_k_on_p()):
        for i, j in combinations(range(n), 2):
            if ad.commutator(R.values[i][j]) != R(ad @ e[i], e[j]) + R(e[i], ad @ e[j]):
                bad.append((a, i, j))
    return bad


@dataclass(frozen=True)
class CurvatureBivector:
    """sum_{i,j} coeffs[i, j] A_i ^ A_j with factors A_i in sp(p, w)."""

    space: SymplecticSpace
    factors: tuple[Matrix, ...]
    coeffs: Matrix

    def __post_init__(self):
        if self.coeffs.shape != (len(self.factors),) * 2:
            raise ValueError("coefficient matrix does not match the number of factors")
        if not self.coeffs.is_skew():
            raise ValueError("coefficient matrix is not skew")

    @property
    def size(self) -> int:
        return len(self.factors)

    def factors_independent(self) -> bool:
        if not self.factors:
            return True
        return Matrix.from_columns([A.flatten() for A in self.factors]).rank() == len(self.factors)

    def is_minimal(self) -> bool:
        return self.factors_independent() and self.coeffs.is_invertible()

    def upper_factors(self) -> list[Matrix]:
        """A^i = sum_j a_ij A_j."""
        n = self.space.dim
        out = []
        for i in range(self.size):
            m = Matrix.zeros(n, n)
            for j in range(self.size):
                if self.coeffs[i, j]:
                    m = m + self.factors[j].scale(self.coeffs[i, j])
            out.append(m)
        return out

    def in_sp_basis(self) -> Matrix:
        """The coefficient 2-form re-expressed in the canonical basis of sp(p, w)."""
        E = _sp_basis(self.space.gram)
        Emat = Matrix.from_columns([e.flatten() for e in E])
        # express each factor in the canonical basis
        C = Matrix.from_columns([Emat.solve(A.flatten()) for A in self.factors], rows=len(E)) if self.factors else Matrix.zeros(len(E), 0)
        return C @ self.coeffs @ C.T

    def rank(self) -> int:
        return self.in_sp_basis().rank()

    def minimal(self) -> "CurvatureBivector":
        return _minimal_presentation(self.space, self.in_sp_basis())


def bivector_expand(B: CurvatureBivector) -> CurvatureOperator:
    V = B.space
    for idx, A in enumerate(B.factors):
        if A.shape != V.gram.shape or not sp_membership(V, A):
            raise SymplecticError(f"factor {idx} is not in sp(p, w)")
    n = V.dim
    e = Matrix.identity(n).columns()
    images = [[A @ e[i] for i in range(n)] for A in B.factors]
    half = Fraction(1, 2)
    upper = {}
    for i, j in combinations(range(n), 2):
        m = Matrix.zeros(n, n)
        for s in range(B.size):
            for t in range(B.size):
                a = B.coeffs[s, t]
                if not a:
                    continue
                term = circ(V, images[s][i], images[t][j]) - circ(V, images[s][j], images[t][i])
                m = m + term.scale(a * half)
        upper[(i, j)] = m
    return _operator_from_pairs(V, upper)


@lru_cache(maxsize=None)
def _sp_basis(gram: Matrix) -> tuple[Matrix, ...]:
    V = SymplecticSpace(gram)
    e = Matrix.identity(V.dim).columns()
    return tuple(circ(V, e[a], e[b]) for a in range(V.dim) for b in range(a, V.dim))


@lru_cache(maxsize=None)
def _expansion_system(gram: Matrix) -> Matrix:
    """Columns: the operator R_{E_s ^ E_t} + R_{E_t ^ E_s} flattened over i < j, for s < t."""
    V = SymplecticSpace(gram)
    E = _sp_basis(gram)
    n = V.dim
    e = Matrix.identity(n).columns()
    images = [[A @ e[i] for i in range(n)] for A in E]
    cols = []
    for s, t in combinations(range(len(E)), 2):
        col = []
        for i, j in combinations(range(n), 2):
            term = circ(V, images[s][i], images[t][j]) - circ(V, images[s][j], images[t][i])
            col.extend(term.flatten())
        cols.append(col)
    rows = n * n * (n * (n - 1) // 2)
    return Matrix.from_columns(cols, rows=rows) if cols else Matrix.zeros(rows, 0)


def bivector_solve(R: CurvatureOperator) -> CurvatureBivector:
    """Minimal presentation of R; bivector_expand of the result reproduces R exactly."""
    V = R.space
    problems = R.check()
    if problems:
        raise NotACurvature("; ".join(problems[:3]))
    if R.is_zero():
        return CurvatureBivector(V, (), Matrix.zeros(0, 0))
    bad = bianchi_violations(R)
    if bad:
        raise NotACurvature(f"first Bianchi identity fails on basis triples {bad[:5]}")
    D = len(_sp_basis(V.gram))
    M = _expansion_system(V.gram)
    rhs = [x for i, j in combinations(range(V.dim), 2) for x in R.values[i][j].flatten()]
    sol = M.solve(rhs)
    if sol is None:
        raise NotACurvature("curvature operator is not in the image of the bivector expansion")
    c = [[Fraction(0)] * D for _ in range(D)]
    for (s, t), x in zip(combinations(range(D), 2), sol):
        # the column for (s, t) is the joint contribution of c_st and c_ts = -c_st
        c[s][t] = x
        c[t][s] = -x
    B = _minimal_presentation(V, Matrix(c, cols=D))
    if bivector_expand(B) != R:
        raise InternalError("bivector presentation does not reproduce the curvature")
    return B


def skew_normal_form(c: Matrix) -> tuple[Matrix, int]:
    """Q with Q c Q^T block diagonal [[0, d], [-d, 0]] ... 0, and the number of blocks.

    Pivots are chosen as the first nonzero entry above the diagonal in
    row-major order among the not yet processed indices.
    """
    n = c.rows
    m = c.tolists()
    Q = Matrix.identity(n).tolists()

    def swap(a, b):
        if a == b:
            return
        m[a], m[b] = m[b], m[a]
        for r in m:
            r[a], r[b] = r[b], r[a]
        Q[a], Q[b] = Q[b], Q[a]

    def add(k, src, f):
        # row_k += f row_src and col_k += f col_src
        m[k] = [x + f * y for x, y in zip(m[k], m[src])]
        for r in m:
            r[k] += f * r[src]
        Q[k] = [x + f * y for x, y in zip(Q[k], Q[src])]

    blocks = 0
    p = 0
    while p + 1 < n:
        piv = next(((i, j) for i in range(p, n) for j in range(i + 1, n) if m[i][j] != 0), None)
        if piv is None:
            break
        i, j = piv
        swap(p, i)
        swap(p + 1, j)
        v = m[p][p + 1]
        for k in range(p + 2, n):
            beta = m[k][p] / v
            alpha = -m[k][p + 1] / v
            if alpha:
                add(k, p, alpha)
            if beta:
                add(k, p + 1, beta)
        blocks += 1
        p += 2
    return Matrix(Q, cols=n), blocks


def _minimal_presentation(V: SymplecticSpace, c: Matrix) -> CurvatureBivector:
    if c.rows == 0 or c.is_zero():
        return CurvatureBivector(V, (), Matrix.zeros(0, 0))
    Q, blocks = skew_normal_form(c)
    r = 2 * blocks
    normal = Q @ c @ Q.T
    Mi = Q.inverse()
    E = _sp_basis(V.gram)
    n = V.dim
    factors = []
    for i in range(r):
        A = Matrix.zeros(n, n)
        for s in range(len(E)):
            if Mi[s, i]:
                A = A + E[s].scale(Mi[s, i])
        factors.append(A)
    coeffs = normal.submatrix(range(r), range(r))
    if not normal.submatrix(range(r, c.rows), range(c.rows)).is_zero():
        raise InternalError("skew elimination left entries outside the leading blocks")
    return CurvatureBivector(V, tuple(factors), coeffs)


def srk(P: SymplecticSymmetricPair) -> int:
    """Symplectic curvature rank: rank of the curvature bivector as a 2-form."""
    return bivector_solve(curvature(P)).size


@dataclass(frozen=True)
class KappaTable:
    """values[i][j] is the functional kappa_ij on k, as coordinates against the k-basis."""

    values: tuple[tuple[Vector, ...], ...]

    def __call__(self, i: int, j: int, k: Vector) -> Fraction:
        return sum((a * b for a, b in zip(self.values[i][j], k)), Fraction(0))


def kappa_solve(k_action: list[Matrix], B: CurvatureBivector) -> KappaTable | None:
    """Solve [ad_k, A_i] = sum_j kappa_ij(k) A^j; None if unsolvable or kappa not symmetric."""
    if not B.is_minimal():
        raise ValueError("kappa_solve needs a minimal presentation")
    r = B.size
    if r == 0:
        return KappaTable(())
    ups = B.upper_factors()
    U = Matrix.from_columns([A.flatten() for A in ups])
    dim_k = len(k_action)
    vals = [[[Fraction(0)] * dim_k for _ in range(r)] for _ in range(r)]
    for a, ad in enumerate(k_action):
        for i in range(r):
            x = U.solve(ad.commutator(B.factors[i]).flatten())
            if x is None:
                return None
            for j in range(r):
                vals[i][j][a] = x[j]
    for i in range(r):
        for j in range(i + 1, r):
            if vals[i][j] != vals[j][i]:
                return None
    return KappaTable(tuple(tuple(tuple(v) for v in row) for row in vals))


def admits_extrinsic(P: SymplecticSymmetricPair, B: CurvatureBivector, K: KappaTable) -> bool:
    """kappa_ij(R(x, y)) == w((A_i A_j + A_j A_i) x, y) for all basis x, y and all i, j.

    R(x, y) = -ad_{[x,y]} is evaluated as the k-element -[x, y].
    """
    if B.space.gram.rows != P.dim_p:
        raise ValueError("presentation lives on a space of the wrong dimension")
    if not B.is_minimal():
        raise ValueError("admits_extrinsic needs a minimal presentation")
    if len(K.values) != B.size:
        raise ValueError("kappa table does not match the presentation")
    n = P.dim_p
    r = B.size
    for i in range(r):
        for j in range(i, r):
            S = B.factors[i] @ B.factors[j] + B.factors[j] @ B.factors[i]
            rhs = S.T @ P.omega
            for x in range(n):
                for y in range(n):
                    k = tuple(-c for c in P.pair.bracket_pp(x, y))
                    if K(i, j, k) != rhs[x, y]:
                        return False
    return True
