"""Check every transcribed point list and the alpha derivations for x^2 + i.

    python scripts/verify_appendix.py [--fixtures DIR]
"""

from __future__ import annotations

import argparse
import sys

from arboreal.cli import APPENDIX_ALPHA_POINTS
from arboreal.curves_verify import SCOPE_NOTE, alpha_consistency, parse_point, verify_all


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--fixtures")
    args = ap.parse_args(argv)

    print(f"# {SCOPE_NOTE}")
    reports = verify_all(args.fixtures)
    for r in reports:
        print(r.table_row())
        for f in r.failures:
            print("    ", f.to_json())
    ok = all(r.ok for r in reports)
    if args.fixtures is None:
        print()
        for case, pt in APPENDIX_ALPHA_POINTS:
            d = alpha_consistency(case, parse_point(pt))
            ok &= d.ok
            print(f"case {case:<6} {pt:<24} alpha = {d.alpha}   span = {d.span}   {'pass' if d.ok else 'FAIL'}")
    print(f"\n{sum(len(r.results) for r in reports)} points on {len(reports)} curves: {'all pass' if ok else 'FAILURES'}")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
