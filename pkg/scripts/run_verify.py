"""Run a theorem suite and print one line per criterion (exit 1 on any failure)."""

from __future__ import annotations

import argparse
import json
import sys

from nearalg.verify import DEFAULT_SEED, SUITES, run_suite


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("suite", nargs="?", default="all", choices=list(SUITES))
    ap.add_argument("--seed", type=int, default=DEFAULT_SEED)
    ap.add_argument("--details", action="store_true", help="also dump each criterion's details as JSON")
    args = ap.parse_args()
    results = run_suite(args.suite, seed=args.seed)
    for res in results:
        print(res.line())
        for v in res.violations[:5]:
            print("   ", v)
        if args.details:
            print(json.dumps(res.details, default=str))
    return 0 if all(r.ok for r in results) else 1


if __name__ == "__main__":
    sys.exit(main())
