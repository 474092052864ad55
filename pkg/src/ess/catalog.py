"""Worked instances and seeded generators shared by the tests and the CLI.

Seeded randomness uses the 64-bit linear congruential generator

    state <- (6364136223846793005 * state + 1442695040888963407) mod 2**64

started from ``state = seed``; an integer in [lo, hi] is drawn as
``lo + (state >> 33) % (hi - lo + 1)`` after advancing the state once.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Sequence

import numpy as np

from .extrinsic import (
    ExtrinsicMorphism,
    FundamentalFormData,
    ferus_construct,
    fullness,
    validate,
)
from .lie_core import LieAlgebra, nilpotency_class
from .linalg import Matrix
from .symmetric_pair import SymmetricPair, SymplecticSymmetricPair, curvature, srk
from .symplectic_core import SymplecticSpace, standard_gram

SEARCH_DIMS = ((2, 2), (2, 4), (4, 2), (4, 4))
DEFAULT_ENTRIES = (-1, 0, 1)


class CatalogError(AssertionError):
    """An entry failed its own expected record."""


class Lcg:
    A = 6364136223846793005
    C = 1442695040888963407
    MASK = (1 << 64) - 1

    def __init__(self, seed: int):
        self.state = seed & self.MASK

    def next(self) -> int:
        self.state = (self.A * self.state + self.C) & self.MASK
        return self.state

    def randint(self, lo: int, hi: int) -> int:
        return lo + (self.next() >> 33) % (hi - lo + 1)


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    pair: SymplecticSymmetricPair
    morphism: ExtrinsicMorphism | None = None
    expected: dict = field(default_factory=dict)
    alpha: FundamentalFormData | None = None

    def __post_init__(self):
        verify_entry(self)


def verify_entry(entry: CatalogEntry) -> None:
    exp = entry.expected
    if "srk" in exp and srk(entry.pair) != exp["srk"]:
        raise CatalogError(f"{entry.name}: srk {srk(entry.pair)} != expected {exp['srk']}")
    m = entry.morphism
    if m is None:
        return
    rep = validate(m)
    if not rep.valid:
        raise CatalogError(f"{entry.name}: invalid morphism: {rep.violations}")
    if "full" in exp:
        f = fullness(m)
        if f.is_full != exp["full"]:
            raise CatalogError(f"{entry.name}: full={f.is_full}, expected {exp['full']}")
        if "w2_prime" in exp and f.w2_prime.vectors() != [tuple(Fraction(x) for x in v) for v in exp["w2_prime"]]:
            raise CatalogError(f"{entry.name}: unexpected W2' {f.w2_prime.vectors()}")


def _flat_pair(dim_p: int) -> SymplecticSymmetricPair:
    return SymplecticSymmetricPair(SymmetricPair(LieAlgebra.abelian(dim_p), 0, dim_p), standard_gram(dim_p // 2))


def flat_affine(n: int = 1) -> CatalogEntry:
    """Abelian pair on Q^{2n} embedded as itself: Lambda = 0, tau = Id."""
    if n < 1:
        raise ValueError("n must be at least 1")
    P = _flat_pair(2 * n)
    V = SymplecticSpace.standard(n)
    m = ExtrinsicMorphism(P, V, tuple(Matrix.zeros(2 * n, 2 * n) for _ in range(2 * n)), Matrix.identity(2 * n))
    return CatalogEntry(f"flat_affine_{n}", P, m, {"srk": 0, "full": True})


PARABOLA_GRAM = Matrix([[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]])


def parabola_alpha() -> FundamentalFormData:
    W = SymplecticSpace.standard(1)
    return FundamentalFormData.from_entries(W, W, {(0, 0): (1, 0)})


def parabola_flat() -> CatalogEntry:
    """The flat plane embedded non-affinely in Q^4 with basis (a1, a2, b1, b2)."""
    P = _flat_pair(2)
    V = SymplecticSpace(PARABOLA_GRAM)
    # Lambda(x1): a1 -> b1, b2 -> -a2
    L1 = Matrix([[0, 0, 0, 0], [0, 0, 0, -1], [1, 0, 0, 0], [0, 0, 0, 0]])
    tau = Matrix([[1, 0], [0, 1], [0, 0], [0, 0]])
    m = ExtrinsicMorphism(P, V, (L1, Matrix.zeros(4, 4)), tau)
    return CatalogEntry(
        "parabola_flat",
        P,
        m,
        {"srk": 0, "full": False, "w2_prime": [(0, 0, 1, 0)], "reduces_to": "flat_affine_1"},
        alpha=parabola_alpha(),
    )


# search


def _tensor_pairs(d1: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(d1) for j in range(i, d1)]


def alpha_from_flat(d1: int, d2: int, values: Sequence[int]) -> FundamentalFormData:
    """alpha with entries listed pair by pair ((0,0), (0,1), ..., (d1-1,d1-1)), d2 coordinates each."""
    entries = {pq: values[a * d2:(a + 1) * d2] for a, pq in enumerate(_tensor_pairs(d1))}
    return FundamentalFormData.from_entries(SymplecticSpace.standard(d1 // 2), SymplecticSpace.standard(d2 // 2), entries)


def enumerate_alphas(d1: int, d2: int, entry_set: Sequence[int] = DEFAULT_ENTRIES) -> Iterator[tuple[int, ...]]:
    """All flattened symmetric tensors in lexicographic order over entry_set."""
    n = len(_tensor_pairs(d1)) * d2
    return itertools.product(tuple(entry_set), repeat=n)


def closure_prefilter(d1: int, d2: int, values: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Exact integer test of the closure condition for a batch of tensors.

    With standard (unimodular) grams on both blocks every quantity is an
    integer, so int64 arithmetic is exact.  Returns (closes, curved): the
    algebra generated by {Lambda(x) + x} is k + p iff [K, Lambda(z)] =
    Lambda(K z) for every K = [Lambda(x_i), Lambda(x_j)] and basis z, and the
    curvature is nonzero iff some K is nonzero on W1.
    """
    G1, G2 = (np.array(standard_gram(d // 2).tolists(), dtype=np.int64) for d in (d1, d2))
    G1Ti = np.array(standard_gram(d1 // 2).T.inverse().tolists(), dtype=np.int64)
    T = len(values)
    n = d1 + d2
    alpha = np.zeros((T, d1, d1, d2), dtype=np.int64)
    for a, (i, j) in enumerate(_tensor_pairs(d1)):
        alpha[:, i, j, :] = values[:, a * d2:(a + 1) * d2]
        alpha[:, j, i, :] = alpha[:, i, j, :]
    # shape[t, b, :, i] = A_{xi_b} x_i
    rhs = np.einsum("tijc,cb->tbij", alpha, G2)
    shape = np.einsum("kl,tbil->tbki", G1Ti, rhs)
    lam = np.zeros((T, d1, n, n), dtype=np.int64)
    for i in range(d1):
        lam[:, i, d1:, :d1] = np.transpose(alpha[:, i], (0, 2, 1))
        lam[:, i, :d1, d1:] = np.transpose(shape[:, :, :, i], (0, 2, 1))
    closes = np.ones(T, dtype=bool)
    curved = np.zeros(T, dtype=bool)
    for i, j in itertools.combinations(range(d1), 2):
        K = lam[:, i] @ lam[:, j] - lam[:, j] @ lam[:, i]
        curved |= np.any(K[:, :d1, :d1] != 0, axis=(1, 2))
        for z in range(d1):
            lhs = K @ lam[:, z] - lam[:, z] @ K
            rhs_z = np.einsum("ti,tiab->tab", K[:, :d1, z], lam)
            closes &= np.all(lhs == rhs_z, axis=(1, 2))
    return closes, curved


def _entry_from_alpha(name: str, data: FundamentalFormData) -> CatalogEntry:
    P, m = ferus_construct(data)
    f = fullness(m)
    return CatalogEntry(
        name,
        P,
        m,
        {
            "srk": f.srk,
            "full": f.is_full,
            "curved": not curvature(P).is_zero(),
            "nilpotency_class": nilpotency_class(P.algebra),
        },
        alpha=data,
    )


def nilpotent_search(
    dims: tuple[int, int],
    entry_set: Sequence[int] = DEFAULT_ENTRIES,
    limit: int = 1,
    curved_only: bool = False,
    batch: int = 1 << 16,
) -> list[CatalogEntry]:
    """First ``limit`` tensors (lexicographic order) for which ferus_construct succeeds.

    Candidates are screened by :func:`closure_prefilter`; every survivor is
    then built exactly.  With ``curved_only`` flat successes are skipped.
    """
    d1, d2 = dims
    if d1 % 2 or d2 % 2 or d1 < 2 or d2 < 2:
        raise ValueError("dims must be even and at least 2")
    found: list[CatalogEntry] = []
    it = enumerate_alphas(d1, d2, entry_set)
    index = 0
    while len(found) < limit:
        chunk = list(itertools.islice(it, batch))
        if not chunk:
            break
        closes, curved = closure_prefilter(d1, d2, np.array(chunk, dtype=np.int64))
        keep = closes & curved if curved_only else closes
        for off in np.flatnonzero(keep):
            values = chunk[off]
            data = alpha_from_flat(d1, d2, values)
            entry = _entry_from_alpha(f"search_{d1}_{d2}_{index + off}", data)
            if curved_only and not entry.expected["curved"]:
                raise CatalogError("prefilter flagged a flat tensor as curved")
            found.append(entry)
            if len(found) >= limit:
                break
        index += len(chunk)
    return found


@lru_cache(maxsize=None)
def nilpotent_primary() -> CatalogEntry:
    """First closing tensor with nonzero curvature over SEARCH_DIMS, entries in {-1, 0, 1}."""
    for dims in SEARCH_DIMS:
        hits = nilpotent_search(dims, DEFAULT_ENTRIES, limit=1, curved_only=True)
        if hits:
            e = hits[0]
            return CatalogEntry("nilpotent_primary", e.pair, e.morphism, dict(e.expected, source=e.name), alpha=e.alpha)
    raise CatalogError("no curved instance within the search bounds")


# random conjugation and padding


def random_symplectic(rng: Lcg, V: SymplecticSpace, transvections: int = 3) -> Matrix:
    """Product of symplectic transvections u -> u + c Omega(v, u) v with small integer v, c."""
    n = V.dim
    g = Matrix.identity(n)
    for _ in range(transvections):
        v = [rng.randint(-2, 2) for _ in range(n)]
        c = (-1, 1, 2, Fraction(1, 2))[rng.randint(0, 3)]
        gv = V.gram.T @ v  # u -> Omega(v, u) = gv . u
        t = Matrix(((Fraction(int(i == j)) + c * v[i] * gv[j] for j in range(n)) for i in range(n)), cols=n)
        g = t @ g
    return g


def pad(m: ExtrinsicMorphism, planes: int) -> ExtrinsicMorphism:
    """Embed into V + (standard Q^{2 planes}) acting trivially on the new summand."""
    if planes == 0:
        return m
    extra = SymplecticSpace.standard(planes)
    V = m.space.direct_sum(extra)
    z = Matrix.zeros(extra.dim, extra.dim)
    Lambda = tuple(Matrix.diag_blocks(L, z) for L in m.Lambda)
    tau = Matrix.vstack(m.tau, Matrix.zeros(extra.dim, m.tau.cols))
    return ExtrinsicMorphism(m.pair, V, Lambda, tau)


def random_morphism(seed: int | None, base: CatalogEntry, pad_planes: int) -> ExtrinsicMorphism:
    """Pad base's morphism and conjugate by a seeded random symplectic map (none if seed is None)."""
    if base.morphism is None:
        raise ValueError(f"{base.name} has no morphism")
    m = pad(base.morphism, pad_planes)
    if seed is None:
        return m
    return m.conjugate(random_symplectic(Lcg(seed), m.space))


def random_invertible(rng: Lcg, n: int, lo: int = -2, hi: int = 2) -> Matrix:
    while True:
        T = Matrix([[rng.randint(lo, hi) for _ in range(n)] for _ in range(n)], cols=n)
        if T.is_invertible():
            return T


@dataclass(frozen=True)
class CorpusConfig:
    """Base entries plus seeded paddings; base entries are cycled over the seeds."""

    paddings: int = 50
    seed0: int = 1
    max_planes: int = 2
    flat_sizes: tuple[int, ...] = (1, 2, 3)


def base_entries(cfg: CorpusConfig = CorpusConfig()) -> list[CatalogEntry]:
    return [flat_affine(n) for n in cfg.flat_sizes] + [parabola_flat(), nilpotent_primary()]


def corpus(cfg: CorpusConfig = CorpusConfig()) -> list[tuple[str, ExtrinsicMorphism]]:
    bases = base_entries(cfg)
    out = [(b.name, b.morphism) for b in bases]
    for t in range(cfg.paddings):
        b = bases[t % len(bases)]
        planes = 1 + (t // len(bases)) % cfg.max_planes
        seed = cfg.seed0 + t
        out.append((f"{b.name}+pad{planes}@{seed}", random_morphism(seed, b, planes)))
    return out


def by_name(name: str) -> CatalogEntry:
    if name == "parabola_flat":
        return parabola_flat()
    if name == "nilpotent_primary":
        return nilpotent_primary()
    if name == "flat_affine":
        return flat_affine(1)
    if name.startswith("flat_affine_"):
        try:
            n = int(name.rsplit("_", 1)[1])
        except ValueError:
            raise KeyError(name) from None
        return flat_affine(n)
    raise KeyError(name)


NAMES = ("flat_affine_<n>", "parabola_flat", "nilpotent_primary")
