"""Run a census over a box and write JSON lines plus a summary table.

    python3 scripts/run_census.py 4 4 1 --out census.jsonl --jobs 1
"""

import argparse
import json
import time
from pathlib import Path

from enriques_mukai.census import census_lines, summarize
from enriques_mukai.config import CensusBounds, ReductionConfig
from enriques_mukai.lattice import SurfaceContext


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("r_max", type=int)
    p.add_argument("s_max", type=int)
    p.add_argument("coeff_bound", type=int)
    p.add_argument("--out", type=Path, default=Path("census.jsonl"))
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--nodal", action="store_true")
    args = p.parse_args()

    bounds = CensusBounds(args.r_max, args.s_max, args.coeff_bound)
    start = time.perf_counter()
    rows = []
    with args.out.open("w") as fh:
        for line in census_lines(bounds, SurfaceContext(nodal=args.nodal), ReductionConfig(), jobs=args.jobs):
            fh.write(line + "\n")
            rows.append(json.loads(line))
    elapsed = time.perf_counter() - start
    print(f"{len(rows)} rows in {elapsed:.1f} s -> {args.out}")
    print(f"{'ell':>3} {'sign':>4} {'case':<22} {'count':>9}")
    for entry in summarize(rows):
        print(f"{entry['ell']:>3} {entry['sign']:>4} {entry['case']:<22} {entry['count']:>9}")


if __name__ == "__main__":
    main()
