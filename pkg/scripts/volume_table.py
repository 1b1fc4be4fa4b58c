"""Table of fixed-polytope volumes of SEP(K_n) by cycle type.

For each partition of n (one representative permutation per cycle type) the
relative volume is computed by the triangulation, by the contraction formula
and, when the dimension allows it, by counting lattice points in dilates.

    python3 scripts/volume_table.py --nmax 6 --format csv
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from dataclasses import asdict, dataclass

from sepvol.combinat import Permutation, complete_graph
from sepvol.ehrhart import MAX_DIM, leading_coefficient
from sepvol.polytope import rvol
from sepvol.sep import fixed_polytope, rvol_fixed_formula, rvol_kn_fixed_formula, sep_build
from sepvol.suites import blocks_from_sizes


@dataclass(frozen=True)
class TableConfig:
    n_min: int = 2
    n_max: int = 6
    ehrhart_max_dim: int = 3


def partitions(n: int, largest: int | None = None):
    largest = largest or n
    if n == 0:
        yield ()
        return
    for k in range(min(n, largest), 0, -1):
        for rest in partitions(n - k, k):
            yield (k,) + rest


def representative(sizes) -> Permutation:
    blocks = blocks_from_sizes(sizes)
    images = list(range(1, blocks.n + 1))
    for b in blocks.blocks:
        for a, c in zip(b, b[1:] + b[:1]):
            images[a - 1] = c
    return Permutation(tuple(images))


def rows(cfg: TableConfig):
    for n in range(cfg.n_min, cfg.n_max + 1):
        g = complete_graph(n)
        base = sep_build(g)
        for sizes in partitions(n):
            sigma = representative(sizes)
            t0 = time.perf_counter()
            p = fixed_polytope(base, sigma).polytope
            hull = rvol(p)
            ehr = leading_coefficient(p) if p.dim <= min(cfg.ehrhart_max_dim, MAX_DIM) else None
            yield {
                "n": n,
                "cycle_type": "+".join(map(str, sizes)),
                "sigma": str(sigma),
                "dim": p.dim,
                "vertices": len(p.vertices),
                "facets": p.facet_count,
                "hull": str(hull),
                "formula": str(rvol_fixed_formula(g, sigma)),
                "kn_closed_form": str(rvol_kn_fixed_formula(n, sigma)),
                "ehrhart": "" if ehr is None else str(ehr),
                "seconds": round(time.perf_counter() - t0, 3),
            }


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--nmin", type=int, default=TableConfig.n_min)
    ap.add_argument("--nmax", type=int, default=TableConfig.n_max)
    ap.add_argument("--format", choices=("csv", "json"), default="csv")
    args = ap.parse_args(argv)
    cfg = TableConfig(n_min=args.nmin, n_max=args.nmax)
    table = list(rows(cfg))
    if args.format == "json":
        json.dump({"config": asdict(cfg), "rows": table}, sys.stdout, indent=2)
        print()
    else:
        w = csv.DictWriter(sys.stdout, fieldnames=list(table[0]), lineterminator="\n")
        w.writeheader()
        w.writerows(table)
    mismatched = [r for r in table if len({r["hull"], r["formula"], r["kn_closed_form"]} | ({r["ehrhart"]} - {""})) != 1]
    if mismatched:
        print(f"{len(mismatched)} rows disagree", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
