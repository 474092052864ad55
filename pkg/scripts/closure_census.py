"""Count closing / curved tensors in a full enumeration, using the integer prefilter.

(2,2) is small enough to also cross-check every verdict with the exact construction.
"""

from __future__ import annotations

import argparse
import itertools
from dataclasses import dataclass

import numpy as np

from ess import catalog as cat
from ess.extrinsic import ClosureFailure, ferus_construct


@dataclass
class ClosureCensusConfig:
    dims: tuple[int, int] = (2, 2)
    entries: tuple[int, ...] = cat.DEFAULT_ENTRIES
    batch: int = 1 << 16
    cross_check: bool = False


def run(cfg: ClosureCensusConfig) -> dict[str, int]:
    d1, d2 = cfg.dims
    it = cat.enumerate_alphas(d1, d2, cfg.entries)
    counts = {"total": 0, "closing": 0, "curved": 0, "mismatch": 0}
    while chunk := list(itertools.islice(it, cfg.batch)):
        closes, curved = cat.closure_prefilter(d1, d2, np.array(chunk, dtype=np.int64))
        counts["total"] += len(chunk)
        counts["closing"] += int(closes.sum())
        counts["curved"] += int((closes & curved).sum())
        if cfg.cross_check:
            for v, c in zip(chunk, closes):
                try:
                    ferus_construct(cat.alpha_from_flat(d1, d2, v))
                    exact = True
                except ClosureFailure:
                    exact = False
                counts["mismatch"] += exact != bool(c)
    print(f"dims={cfg.dims} entries={cfg.entries}: {counts}")
    return counts


def main() -> None:
    d = ClosureCensusConfig()
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--dims", default=",".join(map(str, d.dims)))
    ap.add_argument("--entries", default=",".join(map(str, d.entries)))
    ap.add_argument("--cross-check", action="store_true")
    a = ap.parse_args()
    run(ClosureCensusConfig(
        tuple(int(x) for x in a.dims.split(",")),
        tuple(int(x) for x in a.entries.split(",")),
        cross_check=a.cross_check,
    ))


if __name__ == "__main__":
    main()
