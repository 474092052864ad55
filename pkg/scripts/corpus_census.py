"""Tabulate fullness, srk and the dimension bound over the seeded corpus.

Every non-full element is reduced and compared with the reduction of its
unpadded base entry.
"""

from __future__ import annotations

import argparse
import time
from collections import Counter
from dataclasses import dataclass

from ess import catalog as cat
from ess.extrinsic import affine_equivalence, fullness, reduce_to_full
from ess.symmetric_pair import srk


@dataclass
class CensusConfig:
    paddings: int = 20
    seed0: int = 1
    max_planes: int = 2
    verbose: bool = False


def run(cfg: CensusConfig) -> Counter:
    ccfg = cat.CorpusConfig(cfg.paddings, cfg.seed0, cfg.max_planes)
    targets = {e.name: reduce_to_full(e.morphism).reduced for e in cat.base_entries(ccfg)}
    tally: Counter = Counter()
    t0 = time.perf_counter()
    for name, m in cat.corpus(ccfg):
        f = fullness(m)
        lower = m.pair.dim_p + srk(m.pair)
        ok_bound = m.dim_V >= lower and (m.dim_V == lower) == f.is_full
        base = name.split("+")[0]
        r = reduce_to_full(m).reduced
        ok_equiv = not affine_equivalence(r, targets[base]).check(r, targets[base])
        tally["full" if f.is_full else "not_full"] += 1
        tally["bound_ok"] += ok_bound
        tally["reduction_matches_base"] += ok_equiv
        if cfg.verbose:
            print(f"{name:<34} dim_V={m.dim_V:>2} dim_p+srk={lower:>2} full={f.is_full!s:<5} W2'={f.w2_prime.dim}")
    n = sum(tally[k] for k in ("full", "not_full"))
    print(f"{n} morphisms in {time.perf_counter() - t0:.1f}s")
    for k, v in sorted(tally.items()):
        print(f"  {k}: {v}")
    return tally


def main() -> None:
    d = CensusConfig()
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--paddings", type=int, default=d.paddings)
    ap.add_argument("--seed0", type=int, default=d.seed0)
    ap.add_argument("--max-planes", type=int, default=d.max_planes)
    ap.add_argument("-v", "--verbose", action="store_true")
    a = ap.parse_args()
    run(CensusConfig(a.paddings, a.seed0, a.max_planes, a.verbose))


if __name__ == "__main__":
    main()
