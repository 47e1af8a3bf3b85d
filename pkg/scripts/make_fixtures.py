"""Regenerate the shipped .nat fixture files from the constructions in nearalg.fixtures."""

from __future__ import annotations

import argparse
from pathlib import Path

from nearalg import fixtures as fx
from nearalg.andre import validate_multinearring
from nearalg.core import cyclic_group
from nearalg.modules import validate_module
from nearalg.natfile import (
    DATA_DIR,
    NatDocument,
    emit,
    module_block,
    monoid_block,
    multinearring_block,
    nearring_block,
    write_atomic,
)
from nearalg.nearrings import dickson_fixture, ring_zn


def z9_doc() -> NatDocument:
    z = fx.z9_example()
    return NatDocument([
        monoid_block("M", z.plus.monoid),
        nearring_block("Zphi", z.plus_phi, "M"),
        multinearring_block("R", z.R, "M"),
        module_block("V", z.V, "M"),
    ])


def m3_doc() -> NatDocument:
    N = ring_zn(3)
    R = validate_multinearring(N.monoid, [N])
    return NatDocument([
        monoid_block("M", N.monoid),
        nearring_block("GF3", N, "M"),
        multinearring_block("R", R, "M"),
        module_block("V", fx.gf3_power(2), "M"),
    ])


def m2_doc() -> NatDocument:
    M = fx.m2()
    R = fx.enumerated_multinearring(M)
    Z4 = cyclic_group(4)
    # 0 acts as the zero map, 1 as the identity
    V = validate_module(M, Z4, [[0, 0, 0, 0], [0, 1, 2, 3]])
    return NatDocument([
        monoid_block("M", M),
        multinearring_block("R", R, "M"),
        module_block("Z4", V, "M"),
    ])


def dickson_doc() -> NatDocument:
    D = dickson_fixture()
    R = fx.enumerated_multinearring(D.monoid)
    return NatDocument([
        monoid_block("F", D.monoid),
        nearring_block("D", D, "F"),
        multinearring_block("R", R, "F"),
        module_block("J", fx.dickson_j(), "F"),
        module_block("J2", fx.dickson_j2(), "F"),
    ])


DOCS = {"z9.nat": z9_doc, "m3.nat": m3_doc, "m2.nat": m2_doc, "dickson.nat": dickson_doc}


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default=str(DATA_DIR))
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for name, build in DOCS.items():
        write_atomic(str(out / name), emit(build()))
        print(out / name)


if __name__ == "__main__":
    main()
