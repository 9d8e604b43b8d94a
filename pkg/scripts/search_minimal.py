"""Survey exhaustive minimal-fixed-point searches over small grids.

Each row reports candidate, consistent and non-bounding counts for one
(rank, points, weight bound) cell; the summary is written as JSON.

    python scripts/search_minimal.py --out results/search_minimal.json
"""
import argparse
import json
import logging
import time
from dataclasses import dataclass, field
from pathlib import Path

from eqchern.cobordism import min_fixed_points
from eqchern.fixedpoint import partition_summary
from eqchern.search import SearchConfig, hunt_nonbounding_minimal


@dataclass
class SurveyConfig:
    # (rank, points, weight bound); points=None means the lower bound for that rank
    cells: list = field(default_factory=lambda: [
        (1, 2, 1), (1, 3, 2), (2, 1, 2), (2, 2, 1), (2, 2, 2), (2, 2, 3),
        (2, 3, 1), (3, 1, 1), (3, 2, 1),
    ])
    structural_filter: bool = False
    workers: int = 1


def run(cfg: SurveyConfig) -> list:
    rows = []
    for n, k, b in cfg.cells:
        k = min_fixed_points(n) if k is None else k
        t = time.perf_counter()
        out = hunt_nonbounding_minimal(SearchConfig(
            n, k, b, structural_filter=cfg.structural_filter, workers=cfg.workers))
        row = {"rank": n, "points": k, "weight_bound": b, "min_points": min_fixed_points(n),
               **out.counters(), "seconds": round(time.perf_counter() - t, 2),
               "hit_s_values": [partition_summary(h.dataset).s for h in out.nonbounding_hits],
               "gl_classes": len(out.gl_classes or [])}
        logging.info("%s", row)
        rows.append(row)
    return rows


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path)
    ap.add_argument("--structural-filter", action="store_true")
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args(argv)
    logging.basicConfig(level=logging.INFO, format="%(message)s")
    rows = run(SurveyConfig(structural_filter=args.structural_filter, workers=args.workers))
    print(f"{'n':>2} {'pts':>3} {'B':>2} {'cand':>7} {'consistent':>10} {'hits':>4} {'classes':>7} {'sec':>6}")
    for r in rows:
        print(f"{r['rank']:>2} {r['points']:>3} {r['weight_bound']:>2} {r['candidates_examined']:>7} "
              f"{r['consistent_count']:>10} {r['hits']:>4} {r['gl_classes']:>7} {r['seconds']:>6}")
    if args.out:
        args.out.parent.mkdir(parents=True, exist_ok=True)
        args.out.write_text(json.dumps(rows, indent=1) + "\n")


if __name__ == "__main__":
    main()
