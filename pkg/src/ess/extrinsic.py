"""Extrinsic symplectic morphisms d(iota) = Lambda + tau : g -> asp(V, Omega).

W1 is always tau(p) and W2 its Omega-orthogonal complement.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .lie_core import AspElement, InternalError, LieAlgebra, asp_bracket, closure
from .linalg import Matrix, Subspace, Vector, dot, vec
from .symmetric_pair import (
    CurvatureBivector,
    PairError,
    SymmetricPair,
    SymplecticSymmetricPair,
    srk,
)
from .symplectic_core import (
    QuotientPresentation,
    SymplecticSpace,
    is_nondegenerate,
    omega_complement,
    sp_membership,
    symplectic_quotient,
)


class InvalidMorphism(ValueError):
    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


class EquivalenceError(ValueError):
    pass


class NotFull(EquivalenceError):
    pass


class PairMismatch(EquivalenceError):
    pass


class FormMismatch(EquivalenceError):
    pass


class InternalVerificationFailure(InternalError):
    pass


class ClosureFailure(ValueError):
    """The algebra generated by {Lambda(x) + x} is not a symmetric pair.

    ``kind`` is one of "non_closing", "grading" or "homomorphism".
    """

    def __init__(self, kind: str, detail: str):
        self.kind = kind
        self.detail = detail
        super().__init__(f"{kind}: {detail}")


@dataclass(frozen=True)
class ExtrinsicMorphism:
    pair: SymplecticSymmetricPair
    space: SymplecticSpace
    Lambda: tuple[Matrix, ...]
    tau: Matrix

    @property
    def dim_V(self) -> int:
        return self.space.dim

    @property
    def tau_p(self) -> Matrix:
        k = self.pair.dim_k
        return self.tau.submatrix(range(self.tau.rows), range(k, k + self.pair.dim_p))

    @property
    def W1(self) -> Subspace:
        return Subspace.span(self.tau_p)

    @property
    def W2(self) -> Subspace:
        return omega_complement(self.space, self.W1)

    def Lambda_k(self) -> tuple[Matrix, ...]:
        return self.Lambda[: self.pair.dim_k]

    def Lambda_p(self) -> tuple[Matrix, ...]:
        return self.Lambda[self.pair.dim_k:]

    def d_iota(self, i: int) -> AspElement:
        return AspElement(self.Lambda[i], self.tau.col(i))

    def conjugate(self, g: Matrix) -> "ExtrinsicMorphism":
        """Ad_g of this morphism, for g symplectic on the same space."""
        gi = g.inverse()
        return ExtrinsicMorphism(self.pair, self.space, tuple(g @ L @ gi for L in self.Lambda), g @ self.tau)


@dataclass
class MorphismReport:
    violations: list[str] = field(default_factory=list)
    dim_w1: int | None = None
    dim_w2: int | None = None

    @property
    def valid(self) -> bool:
        return not self.violations


def validate(m: ExtrinsicMorphism) -> MorphismReport:
    rep = MorphismReport()
    P = m.pair
    n = m.dim_V
    g = P.algebra
    if len(m.Lambda) != g.dim:
        rep.violations.append(f"Lambda has {len(m.Lambda)} matrices, expected {g.dim}")
        return rep
    if m.tau.shape != (n, g.dim):
        rep.violations.append(f"tau has shape {m.tau.shape}, expected {(n, g.dim)}")
        return rep
    for i, L in enumerate(m.Lambda):
        if L.shape != (n, n):
            rep.violations.append(f"Lambda[{i}] has shape {L.shape}, expected {(n, n)}")
    if rep.violations:
        return rep
    for i, L in enumerate(m.Lambda):
        if not sp_membership(m.space, L):
            rep.violations.append(f"Lambda[{i}] is not in sp(V, Omega)")

    elems = [m.d_iota(i) for i in range(g.dim)]
    for i, j in combinations(range(g.dim), 2):
        lhs = AspElement.zero(n)
        for c, x in enumerate(g.brackets[i][j]):
            if x:
                lhs = lhs + elems[c].scale(x)
        if asp_bracket(elems[i], elems[j]) != lhs:
            rep.violations.append(f"homomorphism fails on basis pair ({i},{j})")

    for a in range(P.dim_k):
        if any(m.tau.col(a)):
            rep.violations.append(f"tau does not vanish on k-basis vector {a}")
    tp = m.tau_p
    if tp.rank() != P.dim_p:
        rep.violations.append("tau restricted to p is not injective")
        return rep
    W1 = m.W1
    rep.dim_w1 = W1.dim
    if not is_nondegenerate(m.space, W1):
        rep.violations.append("W1 = tau(p) is degenerate")
        return rep
    W2 = m.W2
    rep.dim_w2 = W2.dim
    for i, L in enumerate(m.Lambda):
        in_k = i < P.dim_k
        for name, src, dst in (("W1", W1, W1 if in_k else W2), ("W2", W2, W2 if in_k else W1)):
            if not all(dst.contains(L @ v) for v in src.vectors()):
                part = "k" if in_k else "p"
                rep.violations.append(f"Lambda[{i}] ({part}) does not map {name} into the required block")
    if tp.T @ m.space.gram @ tp != P.omega:
        rep.violations.append("tau*(Omega) differs from omega")
    return rep


def require_valid(m: ExtrinsicMorphism) -> None:
    rep = validate(m)
    if not rep.valid:
        raise InvalidMorphism(rep.violations)


@dataclass(frozen=True)
class AMap:
    """A(xi) for xi running over the canonical basis of W2."""

    w2: Subspace
    matrices: tuple[Matrix, ...]

    def __call__(self, xi) -> Matrix:
        c = self.w2.coordinates(xi)
        n = self.matrices[0].rows if self.matrices else 0
        out = Matrix.zeros(n, n)
        for a, M in zip(c, self.matrices):
            if a:
                out = out + M.scale(a)
        return out

    def as_matrix(self, dim_p: int) -> Matrix:
        """Columns are the flattened A(e_i)."""
        if not self.matrices:
            return Matrix.zeros(dim_p * dim_p, 0)
        return Matrix.from_columns([M.flatten() for M in self.matrices])

    def kernel(self, dim_p: int) -> Subspace:
        K = self.as_matrix(dim_p).kernel()
        return Subspace(self.w2.ambient_dim, (self.w2.basis @ c for c in K.columns()))


def _a_map(m: ExtrinsicMorphism) -> AMap:
    tp = m.tau_p
    W2 = m.W2
    mats = []
    for xi in W2.vectors():
        cols = []
        for L in m.Lambda_p():
            x = tp.solve(L @ xi)
            if x is None:
                raise InternalError("Lambda(x) xi left W1")
            cols.append(x)
        mats.append(Matrix.from_columns(cols, rows=m.pair.dim_p))
    return AMap(W2, tuple(mats))


def a_map(m: ExtrinsicMorphism) -> AMap:
    """tau(A(xi) x) = Lambda(x) xi."""
    require_valid(m)
    A = _a_map(m)
    for idx, M in enumerate(A.matrices):
        if not sp_membership(m.pair.p_space, M):
            raise InternalError(f"A(e_{idx}) is not in sp(p, w)")
    return A


def a_equivariance_violations(m: ExtrinsicMorphism, A: AMap | None = None) -> list[tuple[int, int]]:
    """Pairs (k-index, W2-basis index) where A(Lambda(k) xi) != [ad_k, A(xi)]."""
    A = A or a_map(m)
    ads = m.pair.pair.ad_k_on_p()
    bad = []
    for a, Lk in enumerate(m.Lambda_k()):
        for b, xi in enumerate(A.w2.vectors()):
            if A(Lk @ xi) != ads[a].commutator(A.matrices[b]):
                bad.append((a, b))
    return bad


def curvature_via_A(m: ExtrinsicMorphism) -> CurvatureBivector:
    """sum_{ij} Omega^{ij} A(e_i) ^ A(e_j) over the canonical basis of W2."""
    A = a_map(m)
    W2 = A.w2
    if W2.dim == 0:
        return CurvatureBivector(m.pair.p_space, (), Matrix.zeros(0, 0))
    inv = m.space.restricted_gram(W2).inverse()
    return CurvatureBivector(m.pair.p_space, A.matrices, inv)


def lambda_tau_span(m: ExtrinsicMorphism) -> Subspace:
    """span{Lambda(x) tau(y) : x, y basis of p}."""
    tp = m.tau_p
    return Subspace(m.dim_V, (L @ v for L in m.Lambda_p() for v in tp.columns()))


def stabilises(m: ExtrinsicMorphism, Vp: Subspace) -> bool:
    """d(iota)(g) lies in stab(V')."""
    return all(Vp.is_invariant_under(L) for L in m.Lambda) and all(Vp.contains(c) for c in m.tau.columns())


@dataclass(frozen=True)
class FullnessReport:
    is_full: bool
    c1_minimal_stable: bool
    c2_dim_matches_srk: bool
    c3_A_injective: bool
    c4_span_condition: bool
    witness: Subspace
    w2_prime: Subspace
    a_kernel: Subspace
    srk: int
    dim_w2: int

    def flags(self) -> tuple[bool, bool, bool, bool]:
        return (self.c1_minimal_stable, self.c2_dim_matches_srk, self.c3_A_injective, self.c4_span_condition)


def fullness(m: ExtrinsicMorphism) -> FullnessReport:
    A = a_map(m)
    W1, W2 = m.W1, A.w2
    W2p = lambda_tau_span(m)
    if not W2.contains_space(W2p):
        raise InternalError("Lambda(p) tau(p) is not contained in W2")

    # (1) minimal stable subspace W1 + W2', checked to be stable
    witness = W1 + W2p
    if not stabilises(m, witness):
        raise InternalError("W1 + W2' is not stable under d(iota)(g)")
    c1 = witness.dim == m.dim_V
    # (2) dim W2 == srk
    r = srk(m.pair)
    c2 = W2.dim == r
    # (3) A injective
    ker = A.kernel(m.pair.dim_p)
    c3 = ker.dim == 0
    # (4) W2 spanned by Lambda(x) tau(y)
    c4 = W2p == W2
    flags = (c1, c2, c3, c4)
    if len(set(flags)) != 1:
        raise InternalError(f"fullness criteria disagree: {flags}")
    return FullnessReport(c1, c1, c2, c3, c4, witness, W2p, ker, r, W2.dim)


@dataclass(frozen=True)
class ReductionResult:
    reduced: ExtrinsicMorphism
    quotient: QuotientPresentation
    embedding: Subspace


def reduce_to_full(m: ExtrinsicMorphism) -> ReductionResult:
    require_valid(m)
    Vp = m.W1 + lambda_tau_span(m)
    if not stabilises(m, Vp):
        raise InternalError("minimal subspace is not stable under d(iota)(g)")
    q = symplectic_quotient(m.space, Vp)
    for i, L in enumerate(m.Lambda):
        if not q.null.is_invariant_under(L):
            raise InternalError(f"Lambda[{i}] does not preserve the null space")
    S = q.section_ambient
    Lambda0 = tuple(
        Matrix.from_columns([q.project(L @ s) for s in S.columns()], rows=q.reduced_dim) if S.cols else Matrix.zeros(0, 0)
        for L in m.Lambda
    )
    tau0 = Matrix.from_columns([q.project(c) for c in m.tau.columns()], rows=q.reduced_dim)
    reduced = ExtrinsicMorphism(m.pair, q.reduced, Lambda0, tau0)
    rep = validate(reduced)
    if not rep.valid:
        raise InternalError("reduced morphism is invalid: " + "; ".join(rep.violations))
    if reduced.tau_p.T @ reduced.space.gram @ reduced.tau_p != m.tau_p.T @ m.space.gram @ m.tau_p:
        raise InternalError("reduction changed tau*(Omega)")
    if not fullness(reduced).is_full:
        raise InternalError("reduced morphism is not full")
    return ReductionResult(reduced, q, Vp)


def same_pair(P1: SymplecticSymmetricPair, P2: SymplecticSymmetricPair) -> bool:
    return P1.pair == P2.pair


@dataclass(frozen=True)
class EquivalenceWitness:
    iota: Matrix

    def check(self, m1: ExtrinsicMorphism, m2: ExtrinsicMorphism) -> list[str]:
        problems = []
        io = self.iota
        if io.T @ m2.space.gram @ io != m1.space.gram:
            problems.append("iota is not symplectic")
            return problems
        ioi = io.inverse()
        for i, (L1, L2) in enumerate(zip(m1.Lambda, m2.Lambda)):
            if io @ L1 @ ioi != L2:
                problems.append(f"Lambda_2[{i}] != iota Lambda_1[{i}] iota^-1")
        if io @ m1.tau != m2.tau:
            problems.append("tau_2 != iota tau_1")
        return problems


def affine_equivalence(m1: ExtrinsicMorphism, m2: ExtrinsicMorphism) -> EquivalenceWitness:
    for name, m in (("first", m1), ("second", m2)):
        rep = validate(m)
        if not rep.valid:
            raise InvalidMorphism([f"{name} morphism: {v}" for v in rep.violations])
    if not same_pair(m1.pair, m2.pair):
        raise PairMismatch("the morphisms are defined on different symmetric pairs")
    f1 = m1.tau_p.T @ m1.space.gram @ m1.tau_p
    f2 = m2.tau_p.T @ m2.space.gram @ m2.tau_p
    if f1 != f2:
        raise FormMismatch("tau_1*(Omega_1) != tau_2*(Omega_2)")
    for name, m in (("first", m1), ("second", m2)):
        if not fullness(m).is_full:
            raise NotFull(f"{name} morphism is not full")
    if m1.dim_V != m2.dim_V:
        raise InternalVerificationFailure("full morphisms with different ambient dimensions")

    dim_p = m1.pair.dim_p
    A1, A2 = a_map(m1), a_map(m2)
    A2m = A2.as_matrix(dim_p)
    # iota_1 = tau_2 tau_1^{-1} on W1, iota_2 = A_2^{-1} A_1 on W2
    src = list(m1.tau_p.columns())
    dst = list(m2.tau_p.columns())
    for xi, M in zip(A1.w2.vectors(), A1.matrices):
        c = A2m.solve(M.flatten())
        if c is None:
            raise InternalVerificationFailure("images of the A-maps differ")
        src.append(xi)
        dst.append(A2.w2.basis @ c)
    n = m1.dim_V
    iota = Matrix.from_columns(dst, rows=n) @ Matrix.from_columns(src, rows=n).inverse()
    w = EquivalenceWitness(iota)
    problems = w.check(m1, m2)
    if problems:
        raise InternalVerificationFailure("; ".join(problems))
    return w


@dataclass(frozen=True)
class FundamentalFormData:
    """Symmetric alpha : W1 x W1 -> W2 with both blocks symplectic.

    ``alpha[i][j]`` is the W2-coordinate vector of alpha(x_i, x_j).
    """

    w1: SymplecticSpace
    w2: SymplecticSpace
    alpha: tuple[tuple[Vector, ...], ...]

    def __post_init__(self):
        d1, d2 = self.w1.dim, self.w2.dim
        if len(self.alpha) != d1 or any(len(r) != d1 for r in self.alpha):
            raise ValueError(f"alpha must be a {d1}x{d1} table")
        for i in range(d1):
            for j in range(d1):
                if len(self.alpha[i][j]) != d2:
                    raise ValueError(f"alpha({i},{j}) has length {len(self.alpha[i][j])}, expected {d2}")
                if self.alpha[i][j] != self.alpha[j][i]:
                    raise ValueError(f"alpha is not symmetric at ({i},{j})")

    @classmethod
    def from_entries(cls, w1: SymplecticSpace, w2: SymplecticSpace, entries: dict) -> "FundamentalFormData":
        """entries maps (i, j) with i <= j to W2-coordinates."""
        z = (Fraction(0),) * w2.dim
        tab = [[z] * w1.dim for _ in range(w1.dim)]
        for (i, j), v in entries.items():
            tab[i][j] = tab[j][i] = vec(v)
        return cls(w1, w2, tuple(tuple(r) for r in tab))

    @property
    def space(self) -> SymplecticSpace:
        return self.w1.direct_sum(self.w2)

    def shape_operator(self, b: int) -> Matrix:
        """A_xi for xi the b-th basis vector of W2: Omega(A_xi x, y) = Omega(alpha(x, y), xi)."""
        d1 = self.w1.dim
        G1, G2 = self.w1.gram, self.w2.gram
        xi_col = G2.col(b)
        rhs = Matrix([[dot(self.alpha[i][j], xi_col) for j in range(d1)] for i in range(d1)], cols=d1)
        # column i of A solves G1^T u = rhs row i
        return G1.T.inverse() @ rhs.T

    def lambda_matrix(self, i: int) -> Matrix:
        """Lambda(x_i)(y + xi) = A_xi x_i + alpha(x_i, y) on V = W1 + W2."""
        d1, d2 = self.w1.dim, self.w2.dim
        n = d1 + d2
        cols = []
        for j in range(d1):
            cols.append((Fraction(0),) * d1 + tuple(self.alpha[i][j]))
        for b in range(d2):
            cols.append(tuple(self.shape_operator(b).col(i)) + (Fraction(0),) * d2)
        return Matrix.from_columns(cols, rows=n)


def ferus_construct(data: FundamentalFormData) -> tuple[SymplecticSymmetricPair, ExtrinsicMorphism]:
    """Build the symmetric pair generated by {Lambda(x) + x} and its inclusion morphism."""
    V = data.space
    d1, n = data.w1.dim, V.dim
    lams = [data.lambda_matrix(i) for i in range(d1)]
    for i, L in enumerate(lams):
        if not sp_membership(V, L):
            raise InternalError(f"Lambda(x_{i}) is not in sp(V, Omega)")
    e = Matrix.identity(n).columns()
    gens = [AspElement(lams[i], e[i]) for i in range(d1)]

    W1 = Subspace(n, e[:d1])
    W2 = Subspace(n, e[d1:])
    k_vecs = []
    for i, j in combinations(range(d1), 2):
        b = asp_bracket(gens[i], gens[j])
        if any(b.translation):
            raise ClosureFailure("grading", f"[p_{i}, p_{j}] has a translation part")
        if not (W1.is_invariant_under(b.linear) and W2.is_invariant_under(b.linear)):
            raise ClosureFailure("grading", f"[p_{i}, p_{j}] is not block diagonal")
        k_vecs.append(b.flatten())
    N = n * n + n
    k_space = Subspace(N, k_vecs)
    k_basis = [AspElement.unflatten(v, n) for v in k_space.vectors()]
    dim_k = len(k_basis)

    closed = closure(asp_bracket, gens, ambient_dim=n * (n + 1) // 2 + n)
    if len(closed) != dim_k + d1:
        raise ClosureFailure(
            "non_closing",
            f"generated algebra has dimension {len(closed)} > dim k + dim p = {dim_k + d1}",
        )

    basis = k_basis + gens
    B = Matrix.from_columns([b.flatten() for b in basis])
    dim_g = len(basis)
    table = {}
    for i, j in combinations(range(dim_g), 2):
        c = B.solve(asp_bracket(basis[i], basis[j]).flatten())
        if c is None:
            raise ClosureFailure("non_closing", f"bracket of basis elements {i}, {j} leaves k + p")
        table[(i, j)] = c
    try:
        sp_pair = SymmetricPair(LieAlgebra.from_table(dim_g, table), dim_k, d1)
        pair = SymplecticSymmetricPair(sp_pair, data.w1.gram)
    except PairError as exc:
        raise ClosureFailure("grading", str(exc)) from None

    Lambda = tuple(b.linear for b in basis)
    tau = Matrix.from_columns([b.translation for b in basis], rows=n)
    m = ExtrinsicMorphism(pair, V, Lambda, tau)
    rep = validate(m)
    if not rep.valid:
        raise ClosureFailure("homomorphism", "; ".join(rep.violations))
    return pair, m
