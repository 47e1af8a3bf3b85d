"""Enumerate the near-ring additions on a fixture monoid and print orbit sizes."""

from __future__ import annotations

import argparse
import time

from nearalg import fixtures as fx
from nearalg.enumeration import EnumerationTask, enumerate_nearrings
from nearalg.nearrings import classify, validate_nearring

MONOIDS = {**fx.small_monoids(), "Q8+0": fx.q8_monoid(), "Z9": fx.z9_monoid()}


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("monoids", nargs="*", default=sorted(MONOIDS), help=", ".join(sorted(MONOIDS)))
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()
    for name in args.monoids:
        M = MONOIDS[name]
        t0 = time.perf_counter()
        res = enumerate_nearrings(EnumerationTask(M, dedup_by_automorphism=True, workers=args.workers))
        dt = time.perf_counter() - t0
        fields = sum(classify(validate_nearring(M, t)).is_nearfield for t in res.additions)
        orbits = [len(o) for o in res.orbits]
        print(f"{name:8s} |M|={M.order}  tables={len(res):3d}  near-fields={fields:3d}  "
              f"orbits={orbits}  ({dt:.2f}s)")


if __name__ == "__main__":
    main()
