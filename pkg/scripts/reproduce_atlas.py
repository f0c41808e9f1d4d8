"""Rebuild the PCF atlas for x^d + c and compare it with the classification families.

    python scripts/reproduce_atlas.py --dmax 12 --jobs 4 --out atlas.csv
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from arboreal.dynamics import classify_pcf, expected_pcf_parameters


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--dmax", type=int, default=12)
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--out", type=Path, help="write the full CSV here")
    args = ap.parse_args(argv)

    start = time.perf_counter()
    rows = classify_pcf(args.dmax, jobs=args.jobs)
    if args.out:
        args.out.write_text("D,c,d,pcf,witness\n" + "\n".join(r.csv() for r in rows) + "\n")

    mismatches = 0
    for d in range(2, args.dmax + 1):
        found = {r.c for r in rows if r.d == d and r.pcf}
        expected = expected_pcf_parameters(d)
        flag = "ok" if found == expected else "MISMATCH"
        mismatches += found != expected
        print(f"d={d:>2}  pcf: {', '.join(sorted(map(str, found)))}  [{flag}]")
    print(f"{len(rows)} cells in {time.perf_counter() - start:.2f}s; {mismatches} mismatching degrees")
    return 1 if mismatches else 0


if __name__ == "__main__":
    sys.exit(main())
