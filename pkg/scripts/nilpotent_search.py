"""Search small second fundamental forms for closing (and curved) instances.

    python scripts/nilpotent_search.py --dims 2,2 --limit 5
    python scripts/nilpotent_search.py --dims 4,2 --curved-only --export out/
"""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass
from pathlib import Path

from ess import catalog as cat
from ess.document import Document, save


@dataclass
class SearchConfig:
    dims: tuple[int, int] = (2, 2)
    entries: tuple[int, ...] = cat.DEFAULT_ENTRIES
    limit: int = 10
    curved_only: bool = False
    export: Path | None = None


def run(cfg: SearchConfig) -> list[cat.CatalogEntry]:
    t0 = time.perf_counter()
    found = cat.nilpotent_search(cfg.dims, cfg.entries, limit=cfg.limit, curved_only=cfg.curved_only)
    dt = time.perf_counter() - t0
    print(f"dims={cfg.dims} entries={cfg.entries} curved_only={cfg.curved_only}: {len(found)} hits in {dt:.1f}s")
    print(f"{'name':<22} {'dim_k':>5} {'dim_V':>5} {'srk':>3} {'full':>5} {'curved':>6} {'nil':>4}")
    for e in found:
        x = e.expected
        print(
            f"{e.name:<22} {e.pair.dim_k:>5} {e.morphism.dim_V:>5} {x['srk']:>3} "
            f"{str(x['full']):>5} {str(x['curved']):>6} {str(x['nilpotency_class']):>4}"
        )
        if cfg.export:
            cfg.export.mkdir(parents=True, exist_ok=True)
            save(Document(e.morphism.space, e.pair, e.morphism, e.alpha), cfg.export / f"{e.name}.json")
    return found


def main() -> None:
    d = SearchConfig()
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--dims", default=",".join(map(str, d.dims)))
    ap.add_argument("--entries", default=",".join(map(str, d.entries)))
    ap.add_argument("--limit", type=int, default=d.limit)
    ap.add_argument("--curved-only", action="store_true")
    ap.add_argument("--export", type=Path)
    a = ap.parse_args()
    dims = tuple(int(x) for x in a.dims.split(","))
    entries = tuple(int(x) for x in a.entries.split(","))
    run(SearchConfig(dims, entries, a.limit, a.curved_only, a.export))


if __name__ == "__main__":
    main()
