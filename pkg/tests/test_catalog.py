import numpy as np
import pytest

from ess import catalog as cat
from ess.extrinsic import ClosureFailure, affine_equivalence, ferus_construct, fullness, reduce_to_full, validate
from ess.linalg import Matrix
from ess.symplectic_core import SymplecticSpace


def test_lcg_reference_values():
    rng = cat.Lcg(0)
    s1 = 1442695040888963407
    s2 = (6364136223846793005 * s1 + 1442695040888963407) % 2**64
    assert rng.next() == s1
    assert rng.randint(-2, 2) == -2 + (s2 >> 33) % 5


def test_flat_affine():
    for n, dim in ((1, 2), (2, 4)):
        e = cat.flat_affine(n)
        assert e.morphism.dim_V == dim
        assert fullness(e.morphism).is_full
        assert e.expected["srk"] == 0
        assert reduce_to_full(e.morphism).reduced == e.morphism
    with pytest.raises(ValueError):
        cat.flat_affine(0)


def test_parabola_expected(parabola):
    assert parabola.expected == {"srk": 0, "full": False, "w2_prime": [(0, 0, 1, 0)], "reduces_to": "flat_affine_1"}
    r = reduce_to_full(parabola.morphism).reduced
    target = cat.by_name(parabola.expected["reduces_to"]).morphism
    assert affine_equivalence(r, target).check(r, target) == []


def test_search_contains_flat_and_parabola():
    found = cat.nilpotent_search((2, 2), limit=1000)
    alphas = {e.alpha for e in found}
    zero = cat.alpha_from_flat(2, 2, (0,) * 6)
    assert zero in alphas
    assert cat.parabola_alpha() in alphas
    assert [e.name for e in found] == [e.name for e in cat.nilpotent_search((2, 2), limit=1000)]


def test_search_22_is_flat():
    # every closing (2,2) tensor gives a flat pair, so the curved search moves on
    assert cat.nilpotent_search((2, 2), curved_only=True) == []


def test_prefilter_agrees_with_construction():
    values = list(cat.enumerate_alphas(2, 2))
    closes, curved = cat.closure_prefilter(2, 2, np.array(values, dtype=np.int64))
    for v, c, k in zip(values, closes, curved):
        data = cat.alpha_from_flat(2, 2, v)
        if c:
            P, m = ferus_construct(data)
            assert validate(m).valid
        else:
            with pytest.raises(ClosureFailure):
                ferus_construct(data)
    assert int(closes.sum()) == 105


def test_primary_entry(primary):
    exp = primary.expected
    assert exp["curved"] and exp["full"]
    assert exp["nilpotency_class"] is not None and exp["nilpotency_class"] <= 3
    assert exp["srk"] == fullness(primary.morphism).dim_w2


def test_random_morphism_identity():
    base = cat.flat_affine(1)
    assert cat.random_morphism(None, base, 0) == base.morphism


def test_random_morphism_deterministic(primary):
    assert cat.random_morphism(11, primary, 1) == cat.random_morphism(11, primary, 1)
    assert cat.random_morphism(11, primary, 1) != cat.random_morphism(12, primary, 1)


def test_pad_flat_reduces_back():
    base = cat.flat_affine(1)
    m = cat.random_morphism(5, base, 1)
    assert not fullness(m).is_full
    r = reduce_to_full(m).reduced
    assert affine_equivalence(r, base.morphism).check(r, base.morphism) == []


def test_pad_primary_two_planes(primary):
    m = cat.random_morphism(9, primary, 2)
    assert fullness(m).flags() == (False,) * 4
    r = reduce_to_full(m).reduced
    assert affine_equivalence(r, primary.morphism).check(r, primary.morphism) == []


def test_random_symplectic_is_symplectic():
    V = SymplecticSpace.standard(3)
    g = cat.random_symplectic(cat.Lcg(4), V)
    assert V.is_symplectic_map(g) and g != Matrix.identity(6)


def test_by_name():
    assert cat.by_name("flat_affine_3").morphism.dim_V == 6
    with pytest.raises(KeyError):
        cat.by_name("nope")


def test_corpus_shape():
    c = cat.corpus(cat.CorpusConfig(paddings=10))
    assert len(c) == 15
    assert max(m.dim_V for _, m in c) <= 12
