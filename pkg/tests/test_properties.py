"""Randomized algebraic invariants."""

from fractions import Fraction

from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from ess import catalog as cat
from ess.lie_core import AspElement, asp_bracket, closure
from ess.linalg import Matrix, Subspace
from ess.symmetric_pair import bivector_expand, bivector_solve, change_p_basis, curvature, srk
from ess.symplectic_core import AffineSymplecticMap, SymplecticSpace, circ, reflection, symplectic_quotient

small = st.integers(-3, 3)
V4 = SymplecticSpace.standard(2)
slow = settings(max_examples=25, deadline=None, suppress_health_check=[HealthCheck.too_slow])


def vectors(n):
    return st.lists(small, min_size=n, max_size=n)


@st.composite
def asp_elements(draw, V=V4):
    n = V.dim
    A = Matrix.zeros(n, n)
    for _ in range(draw(st.integers(0, 2))):
        A = A + circ(V, draw(vectors(n)), draw(vectors(n)))
    return AspElement(A, tuple(Fraction(x) for x in draw(vectors(n))))


@given(asp_elements(), asp_elements(), asp_elements())
def test_asp_jacobi(a, b, c):
    s = (
        asp_bracket(a, asp_bracket(b, c))
        + asp_bracket(b, asp_bracket(c, a))
        + asp_bracket(c, asp_bracket(a, b))
    )
    assert s.is_zero()
    assert asp_bracket(a, b).in_sp(V4)


@given(asp_elements(), asp_elements())
def test_asp_antisymmetric(a, b):
    assert (asp_bracket(a, b) + asp_bracket(b, a)).is_zero()


@given(st.integers(0, 2**32), vectors(4))
def test_reflection_involution_and_conjugation(seed, p):
    W = Subspace(4, [(1, 0, 0, 0), (0, 0, 1, 0)])
    s = reflection(V4, W, p)
    assert s.is_symplectic(V4)
    assert s.compose(s) == AffineSymplecticMap.identity(4)
    assert s(p) == tuple(Fraction(x) for x in p)
    # g s_(W,p) g^-1 = s_(gW, gp)
    g = AffineSymplecticMap(cat.random_symplectic(cat.Lcg(seed), V4), (Fraction(1), Fraction(0), Fraction(-2), Fraction(1, 3)))
    lhs = g.compose(s).compose(g.inverse())
    rhs = reflection(V4, W.image(g.linear), g(p))
    assert lhs == rhs


@given(st.permutations(range(3)))
def test_closure_order_independent(perm):
    E = Matrix([[0, 1, 0], [0, 0, 0], [0, 0, 0]])
    F = Matrix([[0, 0, 0], [0, 0, 1], [0, 0, 0]])
    H = Matrix([[0, 0, 0], [0, 0, 0], [1, 0, 0]])
    gens = [E, F, H]
    kw = dict(flatten=Matrix.flatten, unflatten=lambda v: Matrix.unflatten(v, 3, 3))
    ref = closure(lambda x, y: x.commutator(y), gens, **kw)
    got = closure(lambda x, y: x.commutator(y), [gens[i] for i in perm], **kw)
    assert ref == got


@given(st.lists(vectors(4), min_size=1, max_size=4))
def test_quotient_invariants(vs):
    Vp = Subspace(4, vs)
    q = symplectic_quotient(V4, Vp)
    assert q.check() == []
    assert q.reduced_dim % 2 == 0
    assert q.reduced_dim + q.null.dim == Vp.dim


@slow
@given(st.integers(0, 2**32))
def test_srk_basis_invariance(seed):
    P = cat.nilpotent_primary().pair
    T = cat.random_invertible(cat.Lcg(seed), P.dim_p)
    P2 = change_p_basis(P, T)
    assert srk(P2) == srk(P)
    R = curvature(P2)
    assert bivector_expand(bivector_solve(R)) == R


@given(vectors(2), vectors(2))
def test_circ_symmetric(x, y):
    V2 = SymplecticSpace.standard(1)
    assert circ(V2, x, y) == circ(V2, y, x)
