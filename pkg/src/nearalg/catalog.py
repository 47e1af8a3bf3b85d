"""A flat index of every block in a directory of .nat files."""

from __future__ import annotations

import hashlib
from pathlib import Path

from .andre import MultiNearRing
from .core import FiniteAbelianGroup, FiniteMonoid
from .modules import MModule, ModuleMorphism
from .natfile import Resolver, emit_block, write_atomic
from .nearrings import NearRing

HEADER = ("name", "kind", "order", "content-hash", "source-file")
INDEX_NAME = "index.tsv"


def _order(obj) -> int:
    if isinstance(obj, (FiniteMonoid, FiniteAbelianGroup, MModule, NearRing)):
        return obj.order
    if isinstance(obj, MultiNearRing):
        return obj.monoid.order
    if isinstance(obj, ModuleMorphism):
        return obj.dom.order
    raise TypeError(type(obj))


def catalog_rows(directory: str) -> list[tuple]:
    root = Path(directory)
    resolver = Resolver(str(root))
    rows = []
    for path in sorted(root.glob("*.nat")):
        doc = resolver.load(str(path), eager=True)
        for b in doc.blocks:
            digest = hashlib.sha256(emit_block(b).encode()).hexdigest()[:16]
            rows.append((b.name, b.kind, _order(doc.get(b.name)), digest, path.name))
    rows.sort(key=lambda r: (r[1], r[0], r[4]))
    return rows


def catalog_scan(directory: str) -> Path:
    """Write ``index.tsv`` into ``directory`` (atomically) and return its path."""
    rows = catalog_rows(directory)
    lines = ["\t".join(HEADER)] + ["\t".join(map(str, r)) for r in rows]
    out = Path(directory) / INDEX_NAME
    write_atomic(str(out), "\n".join(lines) + "\n")
    return out
