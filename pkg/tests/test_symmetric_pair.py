from fractions import Fraction
from itertools import combinations

import pytest

from ess.lie_core import LieAlgebra
from ess.linalg import Matrix
from ess.symmetric_pair import (
    CurvatureBivector,
    KappaTable,
    NotACurvature,
    PairError,
    SymmetricPair,
    SymplecticSymmetricPair,
    _operator_from_pairs,
    admits_extrinsic,
    bianchi_check,
    bivector_expand,
    bivector_solve,
    curvature,
    equivariance_violations,
    kappa_solve,
    skew_normal_form,
    srk,
)
from ess.symplectic_core import SymplecticSpace, circ, standard_gram


def flat(n):
    return SymplecticSymmetricPair(SymmetricPair(LieAlgebra.abelian(n), 0, n), standard_gram(n // 2))


def test_grading_enforced():
    # [p, p] landing in p
    L = LieAlgebra.from_table(3, {(1, 2): (0, 1, 0)})
    with pytest.raises(PairError, match="grading"):
        SymmetricPair(L, 1, 2)


def test_omega_invariance_enforced():
    # k acts on p = Q^2 by the identity, which is not in sp
    L = LieAlgebra.from_table(3, {(0, 1): (0, 1, 0), (0, 2): (0, 0, 1)})
    with pytest.raises(PairError, match="invariant"):
        SymplecticSymmetricPair(SymmetricPair(L, 1, 2), standard_gram(1))


def test_flat_curvature_zero():
    assert curvature(flat(4)).is_zero()
    assert srk(flat(4)) == 0


def test_parabola_pair_flat(parabola):
    assert curvature(parabola.pair).is_zero()
    assert srk(parabola.pair) == 0


def test_primary_curvature_matches_brackets(primary):
    P = primary.pair
    L = P.algebra
    R = curvature(P)
    assert not R.is_zero()
    dk, n = P.dim_k, P.dim_p
    basis = Matrix.identity(L.dim).columns()
    for i, j in combinations(range(n), 2):
        z = L.bracket(basis[dk + i], basis[dk + j])
        for c in range(n):
            # R(x_i, x_j) x_c = -[[x_i, x_j], x_c]
            want = tuple(-v for v in L.bracket(z, basis[dk + c]))[dk:]
            assert R.values[i][j].col(c) == want


def test_bianchi_and_equivariance_on_primary(primary):
    R = curvature(primary.pair)
    assert bianchi_check(R)
    assert equivariance_violations(primary.pair, R) == []
    assert R.check() == []


def test_bianchi_fails_on_arbitrary_table():
    V = SymplecticSpace.standard(2)
    e = Matrix.identity(4).columns()
    R = _operator_from_pairs(V, {(0, 1): circ(V, e[0], e[0]), (1, 2): circ(V, e[3], e[1])})
    assert not bianchi_check(R)


def test_expand_zero():
    V = SymplecticSpace.standard(1)
    A = Matrix([[1, 0], [0, -1]])
    assert bivector_expand(CurvatureBivector(V, (A, A), Matrix.zeros(2, 2))).is_zero()


def test_expand_single_pair():
    V = SymplecticSpace.standard(2)
    e = Matrix.identity(4).columns()
    A = circ(V, e[0], e[1])
    B = circ(V, e[2], (1, 0, 1, Fraction(1, 2)))
    R = bivector_expand(CurvatureBivector(V, (A, B), Matrix([[0, 1], [-1, 0]])))
    for i, j in combinations(range(4), 2):
        want = circ(V, A @ e[i], B @ e[j]) - circ(V, A @ e[j], B @ e[i])
        assert R.values[i][j] == want


def test_solve_zero_operator():
    B = bivector_solve(curvature(flat(2)))
    assert B.size == 0


def test_solve_round_trip(primary):
    R = curvature(primary.pair)
    B = bivector_solve(R)
    assert B.is_minimal()
    assert bivector_expand(B) == R
    assert B.size == srk(primary.pair) == primary.expected["srk"]


def test_solve_rejects_non_curvature():
    V = SymplecticSpace.standard(2)
    e = Matrix.identity(4).columns()
    R = _operator_from_pairs(V, {(0, 1): circ(V, e[0], e[0])})
    with pytest.raises(NotACurvature):
        bivector_solve(R)


def test_skew_normal_form():
    c = Matrix([[0, 2, 1, 0], [-2, 0, 0, 3], [-1, 0, 0, 1], [0, -3, -1, 0]])
    Q, blocks = skew_normal_form(c)
    D = Q.T @ c @ Q
    assert blocks == c.rank() // 2
    for b in range(blocks):
        assert D[2 * b, 2 * b + 1] == -D[2 * b + 1, 2 * b] != 0
    assert (D.submatrix(range(2 * blocks, 4), range(4))).is_zero()


def test_kappa_trivial_k():
    V = SymplecticSpace.standard(1)
    assert kappa_solve([], CurvatureBivector(V, (), Matrix.zeros(0, 0))).values == ()


def test_kappa_own_action(primary):
    B = bivector_solve(curvature(primary.pair))
    assert kappa_solve(primary.pair.pair.ad_k_on_p(), B) is not None


def test_kappa_perturbed_action(primary):
    B = bivector_solve(curvature(primary.pair))
    (ad,) = primary.pair.pair.ad_k_on_p()
    bumped = ad + Matrix([[1 if (i, j) == (0, 0) else 0 for j in range(4)] for i in range(4)])
    assert kappa_solve([bumped], B) is None


def test_admits_flat():
    P = flat(2)
    B = CurvatureBivector(P.p_space, (), Matrix.zeros(0, 0))
    assert admits_extrinsic(P, B, KappaTable(()))


def test_admits_primary(primary):
    P = primary.pair
    B = bivector_solve(curvature(P))
    K = kappa_solve(P.pair.ad_k_on_p(), B)
    assert admits_extrinsic(P, B, K)


def test_admits_primary_scaled_omega(primary):
    # Both sides vanish identically here: kappa = 0 and A_i A_j + A_j A_i = 0,
    # so doubling omega does not change the verdict.
    P = primary.pair
    B = bivector_solve(curvature(P))
    K = kappa_solve(P.pair.ad_k_on_p(), B)
    assert all(v == (0,) for row in K.values for v in row)
    assert all((Ai @ Aj + Aj @ Ai).is_zero() for Ai in B.factors for Aj in B.factors)
    P2 = SymplecticSymmetricPair(P.pair, P.omega.scale(2))
    assert admits_extrinsic(P2, B, K)


def test_admits_primary_perturbed_kappa(primary):
    P = primary.pair
    B = bivector_solve(curvature(P))
    K = KappaTable((((Fraction(1),), (Fraction(0),)), ((Fraction(0),), (Fraction(0),))))
    assert not admits_extrinsic(P, B, K)
