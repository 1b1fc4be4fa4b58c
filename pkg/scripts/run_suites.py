"""Run every verification suite and write one JSON report per suite.

    SEP_THREADS=4 python3 scripts/run_suites.py --outdir reports --nmax 6 --seed 0
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

from sepvol.corpus import CorpusSpec
from sepvol.suites import SUITES, run_suite


@dataclass
class RunConfig:
    outdir: Path = Path("reports")
    suites: tuple = SUITES
    corpus: CorpusSpec = field(default_factory=CorpusSpec)


def run(cfg: RunConfig) -> bool:
    cfg.outdir.mkdir(parents=True, exist_ok=True)
    all_ok = True
    for suite in cfg.suites:
        t0 = time.perf_counter()
        report = run_suite(suite, cfg.corpus)
        path = cfg.outdir / f"{suite}.json"
        path.write_text(json.dumps(report, indent=2) + "\n")
        s = report["summary"]
        all_ok &= s["pass"]
        print(f"{suite:16s} {s['cases'] - s['failed']:5d}/{s['cases']:<5d} "
              f"{'ok' if s['pass'] else 'FAIL'}  {time.perf_counter() - t0:6.1f}s  -> {path}")
    return all_ok


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--outdir", type=Path, default=Path("reports"))
    ap.add_argument("--suite", action="append", choices=SUITES)
    ap.add_argument("--nmax", type=int, default=6)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--random-count", type=int, default=20)
    args = ap.parse_args(argv)
    cfg = RunConfig(
        outdir=args.outdir,
        suites=tuple(args.suite) if args.suite else SUITES,
        corpus=CorpusSpec(n_max=args.nmax, random_seed=args.seed, random_count=args.random_count),
    )
    return 0 if run(cfg) else 1


if __name__ == "__main__":
    sys.exit(main())
