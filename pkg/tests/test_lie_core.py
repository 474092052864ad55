import pytest

from ess.lie_core import (
    AspElement,
    InternalError,
    LieAlgebra,
    LinearLieMap,
    asp_bracket,
    closure,
    is_homomorphism,
    jacobi_check,
    lower_central_series,
    nilpotency_class,
)
from ess.linalg import Matrix

HEIS = {(0, 1): (0, 0, 1)}  # [x, y] = z


def test_antisymmetry_enforced():
    b = [[(0, 0), (1, 0)], [(1, 0), (0, 0)]]
    with pytest.raises(ValueError):
        LieAlgebra(tuple(tuple(tuple(v) for v in r) for r in b))


def test_jacobi_abelian_and_heisenberg():
    assert jacobi_check(LieAlgebra.abelian(3)) == []
    assert jacobi_check(LieAlgebra.from_table(3, HEIS)) == []


def test_jacobi_perturbed_heisenberg():
    # [x, z] = x: the cyclic sum on (x, y, z) is [y, [z, x]] = z
    L = LieAlgebra.from_table(3, {(0, 1): (0, 0, 1), (0, 2): (1, 0, 0)})
    assert jacobi_check(L) == [(0, 1, 2)]


def test_heisenberg_nilpotency():
    L = LieAlgebra.from_table(3, HEIS)
    assert lower_central_series(L) == [3, 1, 0]
    assert nilpotency_class(L) == 2
    sl2 = LieAlgebra.from_table(3, {(0, 1): (0, 0, 1), (2, 0): (2, 0, 0), (2, 1): (0, -2, 0)})
    assert nilpotency_class(sl2) is None


def test_asp_translations_commute():
    a = AspElement.pure_translation((1, 2))
    b = AspElement.pure_translation((3, -1))
    assert asp_bracket(a, b).is_zero()


def test_asp_linear_on_translation():
    A = Matrix([[1, 0], [0, -1]])
    r = asp_bracket(AspElement.pure_linear(A), AspElement.pure_translation((2, 5)))
    assert r.linear.is_zero()
    assert r.translation == A @ (2, 5)


def test_parabola_generators_commute(parabola):
    m = parabola.morphism
    a, b = m.d_iota(0), m.d_iota(1)
    assert asp_bracket(a, b).is_zero()
    span = closure(asp_bracket, [a, b])
    assert len(span) == 2


def _mat_closure(gens):
    return closure(
        lambda x, y: x.commutator(y),
        gens,
        flatten=Matrix.flatten,
        unflatten=lambda v: Matrix.unflatten(v, 2, 2),
    )


def test_closure_sl2():
    E = Matrix([[0, 1], [0, 0]])
    F = Matrix([[0, 0], [1, 0]])
    assert len(_mat_closure([E, F])) == 3


def test_closure_already_closed():
    H = Matrix([[1, 0], [0, -1]])
    E = Matrix([[0, 1], [0, 0]])
    assert len(_mat_closure([H, E])) == 2


def test_closure_cap_is_loud():
    E = Matrix([[0, 1], [0, 0]])
    F = Matrix([[0, 0], [1, 0]])
    with pytest.raises(InternalError):
        closure(lambda x, y: x.commutator(y), [E, F], flatten=Matrix.flatten,
                unflatten=lambda v: Matrix.unflatten(v, 2, 2), ambient_dim=0)


def test_homomorphism_trivial_cases():
    L = LieAlgebra.from_table(3, HEIS)
    assert is_homomorphism(LinearLieMap(L, Matrix.zeros(3, 3)), L.bracket)
    assert is_homomorphism(LinearLieMap(L, Matrix.identity(3)), L.bracket)
    swap = Matrix([[0, 1, 0], [1, 0, 0], [0, 0, 1]])
    assert not is_homomorphism(LinearLieMap(L, swap), L.bracket)


def test_catalog_d_iota_is_homomorphism(primary):
    m = primary.morphism
    L = primary.pair.algebra
    n = m.dim_V
    f = LinearLieMap(L, Matrix.from_columns([m.d_iota(i).flatten() for i in range(L.dim)]))

    def target(u, v):
        return asp_bracket(AspElement.unflatten(u, n), AspElement.unflatten(v, n)).flatten()

    assert is_homomorphism(f, target)
