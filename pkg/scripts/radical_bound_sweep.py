"""Certified sweep of 1/(6k) >= log(sqrt(6k)/2)/(12k+1) with the Breusch prime for each k.

    python scripts/radical_bound_sweep.py --kmax 1000 --out sweep.csv
"""

from __future__ import annotations

import argparse
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from arboreal.bounds import CSV_HEADER, radical_bound_check


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--kmax", type=int, default=1000)
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--out", type=Path)
    args = ap.parse_args(argv)

    ks = range(2, args.kmax + 1)
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as ex:
            rows = list(ex.map(radical_bound_check, ks, chunksize=32))
    else:
        rows = [radical_bound_check(k) for k in ks]
    if args.out:
        args.out.write_text(CSV_HEADER + "\n" + "\n".join(r.csv() for r in rows) + "\n")

    true_ks = [r.k for r in rows if r.verdict]
    last = max(true_ks) if true_ks else None
    antitone = true_ks == list(range(2, (last or 1) + 1))
    print(f"inequality holds for k = 2..{last}; fails for k = {last + 1}..{args.kmax}" if antitone else "verdicts not antitone")
    for r in rows[:3] + rows[33:37]:
        print(r.csv())
    return 0 if antitone else 1


if __name__ == "__main__":
    sys.exit(main())
