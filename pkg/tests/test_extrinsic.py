from fractions import Fraction

import pytest

from ess import catalog as cat
from ess.extrinsic import (
    ClosureFailure,
    ExtrinsicMorphism,
    FundamentalFormData,
    InvalidMorphism,
    NotFull,
    PairMismatch,
    a_equivariance_violations,
    a_map,
    affine_equivalence,
    curvature_via_A,
    ferus_construct,
    fullness,
    reduce_to_full,
    validate,
)
from ess.linalg import Matrix, Subspace
from ess.symmetric_pair import bivector_expand, curvature
from ess.symplectic_core import SymplecticSpace

a1, a2, b1, b2 = Matrix.identity(4).columns()


def test_validate_flat():
    assert validate(cat.flat_affine(2).morphism).valid


def test_validate_parabola(parabola):
    rep = validate(parabola.morphism)
    assert rep.valid and rep.dim_w1 == 2 and rep.dim_w2 == 2


def test_parabola_without_lambda_still_valid(parabola):
    m = parabola.morphism
    z = Matrix.zeros(4, 4)
    assert validate(ExtrinsicMorphism(m.pair, m.space, (z, z), m.tau)).valid


def test_degenerate_w1_rejected(parabola):
    m = parabola.morphism
    tau = Matrix.from_columns([a1, b1])
    rep = validate(ExtrinsicMorphism(m.pair, m.space, m.Lambda, tau))
    assert not rep.valid
    assert any("degenerate" in v for v in rep.violations)


def test_lambda_outside_sp_rejected(parabola):
    m = parabola.morphism
    bad = (Matrix.identity(4), m.Lambda[1])
    rep = validate(ExtrinsicMorphism(m.pair, m.space, bad, m.tau))
    assert "Lambda[0] is not in sp(V, Omega)" in rep.violations


def test_a_map_flat():
    assert a_map(cat.flat_affine(1).morphism).matrices == ()


def test_a_map_parabola(parabola):
    A = a_map(parabola.morphism)
    assert A(b1).is_zero()
    assert A(b2) == Matrix([[0, 0], [-1, 0]])


def test_a_equivariance_primary(primary):
    assert a_equivariance_violations(primary.morphism) == []


def test_curvature_via_a_flat_and_parabola(parabola):
    assert curvature_via_A(cat.flat_affine(1).morphism).size == 0
    assert bivector_expand(curvature_via_A(parabola.morphism)).is_zero()


def test_curvature_via_a_primary(primary):
    assert bivector_expand(curvature_via_A(primary.morphism)) == curvature(primary.pair)


def test_fullness_flat():
    f = fullness(cat.flat_affine(1).morphism)
    assert f.is_full and all(f.flags())


def test_fullness_parabola(parabola):
    f = fullness(parabola.morphism)
    assert f.flags() == (False,) * 4
    assert f.w2_prime == Subspace(4, [b1])
    assert f.a_kernel == Subspace(4, [b1])
    assert (f.srk, f.dim_w2) == (0, 2)


def test_reduce_parabola(parabola):
    res = reduce_to_full(parabola.morphism)
    r = res.reduced
    assert r.dim_V == 2
    assert all(L.is_zero() for L in r.Lambda)
    assert r.tau == Matrix.identity(2)
    assert all(fullness(r).flags())
    assert affine_equivalence(r, cat.flat_affine(1).morphism).iota == Matrix.identity(2)


def test_reduce_full_is_iso(primary):
    res = reduce_to_full(primary.morphism)
    assert res.quotient.null.dim == 0
    assert res.reduced.dim_V == primary.morphism.dim_V
    assert affine_equivalence(res.reduced, primary.morphism).check(res.reduced, primary.morphism) == []


def test_reduce_padded_primary(primary):
    m = cat.random_morphism(3, primary, 1)
    res = reduce_to_full(m)
    w = affine_equivalence(res.reduced, primary.morphism)
    assert w.check(res.reduced, primary.morphism) == []


def test_equivalence_identity(primary):
    m = primary.morphism
    assert affine_equivalence(m, m).iota == Matrix.identity(m.dim_V)


def test_equivalence_recovers_block_conjugation(primary):
    m = primary.morphism
    assert m.W1 == Subspace(6, Matrix.identity(6).columns()[:4])
    g = Matrix.diag_blocks(Matrix.identity(4), Matrix([[2, 1], [1, 1]]))
    assert m.space.is_symplectic_map(g)
    m2 = m.conjugate(g)
    assert affine_equivalence(m, m2).iota == g


def test_equivalence_refusals(parabola, primary):
    with pytest.raises(NotFull):
        affine_equivalence(parabola.morphism, parabola.morphism)
    with pytest.raises(PairMismatch):
        affine_equivalence(cat.flat_affine(2).morphism, primary.morphism)
    m = parabola.morphism
    broken = ExtrinsicMorphism(m.pair, m.space, m.Lambda, Matrix.from_columns([a1, b1]))
    with pytest.raises(InvalidMorphism):
        affine_equivalence(broken, m)


def test_ferus_zero_alpha():
    W = SymplecticSpace.standard(1)
    P, m = ferus_construct(FundamentalFormData.from_entries(W, SymplecticSpace(Matrix.zeros(0, 0)), {}))
    flat = cat.flat_affine(1)
    assert (P, m) == (flat.pair, flat.morphism)


def test_ferus_zero_alpha_with_normal_space():
    W = SymplecticSpace.standard(1)
    P, m = ferus_construct(FundamentalFormData.from_entries(W, W, {}))
    assert P.dim_k == 0
    assert all(L.is_zero() for L in m.Lambda)
    # W2 is never reached, so the image is the affine plane W1
    assert not fullness(m).is_full
    assert reduce_to_full(m).reduced == cat.flat_affine(1).morphism


def test_ferus_parabola(parabola):
    P, m = ferus_construct(cat.parabola_alpha())
    assert m == parabola.morphism
    assert m.Lambda[0] @ a1 == b1 and m.Lambda[0] @ b2 == tuple(-x for x in a2)
    assert m.Lambda[1].is_zero()


def test_alpha_symmetry_required():
    W = SymplecticSpace.standard(1)
    z = (Fraction(0), Fraction(0))
    with pytest.raises(ValueError, match="symmetric"):
        FundamentalFormData(W, W, ((z, (Fraction(1), Fraction(0))), (z, z)))


def test_ferus_non_closing():
    # alpha(x1, x1) = b1, alpha(x2, x2) = b2
    data = cat.alpha_from_flat(2, 2, (1, 0, 0, 0, 0, 1))
    with pytest.raises(ClosureFailure):
        ferus_construct(data)
