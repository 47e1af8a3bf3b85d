"""The ``.nat`` structure file format.

A document is a sequence of blocks::

    # comment
    @monoid M2
    order 2
    table:
    0 0
    0 1

Headers are ``key value...`` lines; a table starts with ``name:`` (or
``adds k:``) and runs over the following all-integer lines. References to
other blocks are bare names, or ``file.nat:Name`` for other files.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Optional

import numpy as np

from .andre import MultiNearRing, validate_multinearring
from .core import FiniteAbelianGroup, FiniteMonoid, validate_abelian_group, validate_monoid
from .errors import AlgebraError, BadShape, NatSyntaxError, UnresolvedReference, ValidationError
from .modules import MModule, ModuleMorphism, morphism, validate_module
from .nearrings import NearRing, validate_nearring

KINDS = ("monoid", "group", "nearring", "module", "multinearring", "morphism")
HEADER_ORDER = ("order", "labels", "zero", "minus_one", "monoid", "dom", "cod")
TABLE_ORDER = ("table", "add", "act", "map", "adds")
DATA_DIR = Path(__file__).parent / "data"


@dataclass
class NatBlock:
    kind: str
    name: str
    headers: dict = field(default_factory=dict)  # key -> list of tokens
    tables: dict = field(default_factory=dict)  # key -> list of rows (adds -> list of tables)
    line: int = 0


@dataclass
class NatDocument:
    blocks: list
    source: Optional[str] = None
    objects: dict = field(default_factory=dict)
    resolver: Optional["Resolver"] = field(default=None, repr=False)

    def names(self) -> list[str]:
        return [b.name for b in self.blocks]

    def block(self, name: str) -> NatBlock:
        for b in self.blocks:
            if b.name == name:
                return b
        raise UnresolvedReference(detail=name)

    def __getitem__(self, name: str):
        return self.get(name)

    def get(self, name: str):
        """The validated structure for ``name``, resolving it on first use."""
        if name not in self.objects:
            if self.resolver is None or name not in self.names():
                raise UnresolvedReference(detail=name)
            self.resolver.resolve(self, name)
        return self.objects[name]


# --------------------------------------------------------------------------
# syntax


def _is_row(tokens) -> bool:
    return bool(tokens) and all(t.lstrip("-").isdigit() for t in tokens)


def parse_blocks(text: str) -> list[NatBlock]:
    blocks: list[NatBlock] = []
    cur: Optional[NatBlock] = None
    table: Optional[tuple] = None  # (key, count, rows)

    def close_table(lineno):
        nonlocal table
        if table is None:
            return
        key, count, rows = table
        if key == "adds":
            if count == 0:
                cur.tables["adds"] = []
            elif not rows or len(rows) % count:
                raise NatSyntaxError(lineno, f"adds {count}: row count {len(rows)} not divisible")
            else:
                k = len(rows) // count
                cur.tables["adds"] = [rows[i * k:(i + 1) * k] for i in range(count)]
        else:
            if not rows:
                raise NatSyntaxError(lineno, f"table {key}: has no rows")
            cur.tables[key] = rows
        table = None

    lineno = 0
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if table is not None and _is_row(tokens):
            table[2].append([int(t) for t in tokens])
            continue
        close_table(lineno)
        if line.startswith("@"):
            if len(tokens) != 2:
                raise NatSyntaxError(lineno, "expected '@<kind> <name>'")
            kind = tokens[0][1:]
            if kind not in KINDS:
                raise NatSyntaxError(lineno, f"unknown block kind {kind!r}")
            if any(b.name == tokens[1] for b in blocks):
                raise NatSyntaxError(lineno, f"duplicate name {tokens[1]!r}")
            cur = NatBlock(kind, tokens[1], line=lineno)
            blocks.append(cur)
            continue
        if cur is None:
            raise NatSyntaxError(lineno, "content before the first block")
        if tokens[-1].endswith(":"):
            key = tokens[0].rstrip(":")
            if key == "adds":
                if len(tokens) != 2 or not tokens[1][:-1].isdigit():
                    raise NatSyntaxError(lineno, "expected 'adds <k>:'")
                table = ("adds", int(tokens[1][:-1]), [])
            elif len(tokens) == 1 and key in TABLE_ORDER:
                if key in cur.tables:
                    raise NatSyntaxError(lineno, f"duplicate table {key}")
                table = (key, 1, [])
            else:
                raise NatSyntaxError(lineno, f"unknown table {line!r}")
            continue
        if _is_row(tokens):
            raise NatSyntaxError(lineno, "table row outside a table")
        key = tokens[0]
        if key not in HEADER_ORDER:
            raise NatSyntaxError(lineno, f"unknown header {key!r}")
        if key in cur.headers:
            raise NatSyntaxError(lineno, f"duplicate header {key}")
        cur.headers[key] = tokens[1:]
    close_table(lineno + 1)
    return blocks


# --------------------------------------------------------------------------
# resolution


class Resolver:
    """Turns blocks into validated structures; caches other files by path."""

    def __init__(self, base_dir: Optional[str] = None):
        self.base_dir = Path(base_dir) if base_dir else Path.cwd()
        self.files: dict = {}
        self.active: set = set()  # (document id, name) pairs being resolved; shared across files

    def load(self, path: str, eager: bool = False) -> NatDocument:
        p = locate(path, self.base_dir)
        key = str(p.resolve())
        if key not in self.files:
            sub = Resolver(str(p.parent))
            sub.files, sub.active = self.files, self.active
            self.files[key] = sub.parse(p.read_text(encoding="utf-8"), source=str(p), eager=False)
        doc = self.files[key]
        if eager:
            for b in doc.blocks:
                doc.get(b.name)
        return doc

    def parse(self, text: str, source: Optional[str] = None, eager: bool = True) -> NatDocument:
        doc = NatDocument(parse_blocks(text), source, resolver=self)
        if eager:
            for b in doc.blocks:
                self.resolve(doc, b.name)
        return doc

    def resolve(self, doc: NatDocument, name: str):
        return self._resolve(doc, name)

    def ref(self, doc: NatDocument, name: str):
        if ":" in name:
            path, _, sub = name.rpartition(":")
            other = self.load(path)
            if sub not in other.names():
                raise UnresolvedReference(detail=name)
            return other.get(sub)
        if name not in doc.names():
            raise UnresolvedReference(detail=name)
        return self._resolve(doc, name)

    def _resolve(self, doc, name):
        if name in doc.objects:
            return doc.objects[name]
        key = (id(doc), name)
        if key in self.active:
            raise UnresolvedReference(detail=f"cyclic reference {name}")
        self.active.add(key)
        b = doc.block(name)
        try:
            obj = _BUILDERS[b.kind](self, doc, b)
        except (UnresolvedReference, ValidationError, NatSyntaxError):
            raise
        except AlgebraError as exc:
            raise ValidationError(name, exc) from exc
        finally:
            self.active.discard(key)
        doc.objects[name] = obj
        return obj


def _single(b: NatBlock, key: str) -> str:
    vals = b.headers.get(key)
    if not vals or len(vals) != 1:
        raise NatSyntaxError(b.line, f"block {b.name}: header {key} needs one value")
    return vals[0]


def _order(b: NatBlock) -> Optional[int]:
    if "order" not in b.headers:
        return None
    v = _single(b, "order")
    if not v.isdigit():
        raise NatSyntaxError(b.line, f"block {b.name}: bad order {v!r}")
    return int(v)


def _table(b: NatBlock, key: str):
    if key not in b.tables:
        raise NatSyntaxError(b.line, f"block {b.name}: missing table {key}:")
    rows = b.tables[key]
    widths = {len(r) for r in rows}
    if len(widths) != 1:
        raise BadShape(detail=f"ragged table {key}")
    return np.array(rows, dtype=np.int64)


def _check_order(b, got, claimed):
    if claimed is not None and claimed != got:
        raise BadShape(claimed, got, detail=f"order header disagrees with table {b.name}")


def _opt_int(b, key):
    return int(_single(b, key)) if key in b.headers else None


def _build_monoid(res, doc, b) -> FiniteMonoid:
    t = _table(b, "table")
    n = _order(b)
    if n is None:
        n = t.shape[0]
    return validate_monoid(n, b.headers.get("labels"), t,
                           zero=_opt_int(b, "zero"), minus_one=_opt_int(b, "minus_one"))


def _build_group(res, doc, b) -> FiniteAbelianGroup:
    t = _table(b, "add")
    _check_order(b, t.shape[0], _order(b))
    return validate_abelian_group(t.shape[0], t)


def _monoid_of(res, doc, b) -> FiniteMonoid:
    M = res.ref(doc, _single(b, "monoid"))
    if not isinstance(M, FiniteMonoid):
        raise BadShape(detail=f"{b.name}: monoid reference is not a monoid")
    return M


def _build_nearring(res, doc, b) -> NearRing:
    if "table" in b.tables:
        M = _build_monoid(res, doc, b)
    else:
        M = _monoid_of(res, doc, b)
        _check_order(b, M.order, _order(b))
    return validate_nearring(M, _table(b, "add"))


def _build_module(res, doc, b) -> MModule:
    M = _monoid_of(res, doc, b)
    add = _table(b, "add")
    _check_order(b, add.shape[0], _order(b))
    G = validate_abelian_group(add.shape[0], add)
    return validate_module(M, G, _table(b, "act"))


def _build_multi(res, doc, b) -> MultiNearRing:
    M = _monoid_of(res, doc, b)
    if "adds" not in b.tables:
        raise NatSyntaxError(b.line, f"block {b.name}: missing adds <k>:")
    return validate_multinearring(M, [np.array(t) for t in b.tables["adds"]])


def _build_morphism(res, doc, b) -> ModuleMorphism:
    dom = res.ref(doc, _single(b, "dom"))
    cod = res.ref(doc, _single(b, "cod"))
    if not (isinstance(dom, MModule) and isinstance(cod, MModule)):
        raise BadShape(detail=f"{b.name}: dom and cod must be modules")
    t = _table(b, "map")
    if t.shape[0] != 1:
        raise BadShape(detail="map: must be a single row")
    return morphism(dom, cod, t[0])


_BUILDERS: dict[str, Callable] = {
    "monoid": _build_monoid,
    "group": _build_group,
    "nearring": _build_nearring,
    "module": _build_module,
    "multinearring": _build_multi,
    "morphism": _build_morphism,
}


def locate(path: str, base_dir: Optional[Path] = None) -> Path:
    """Find a .nat file: as given, relative to ``base_dir``, then among the shipped fixtures."""
    p = Path(path)
    cands = [p] if p.is_absolute() else [Path(base_dir or Path.cwd()) / p, p, DATA_DIR / p]
    for c in cands:
        if c.is_file():
            return c
    raise UnresolvedReference(detail=f"file not found: {path}")


def parse_nat(text: str, base_dir: Optional[str] = None, source: Optional[str] = None) -> NatDocument:
    return Resolver(base_dir).parse(text, source)


def load_nat(path: str) -> NatDocument:
    return Resolver().load(path, eager=True)


def resolve_ref(ref: str, resolver: Optional[Resolver] = None):
    """Resolve ``file.nat:Name`` to a validated structure."""
    path, sep, name = ref.rpartition(":")
    if not sep or not path:
        raise UnresolvedReference(detail=f"expected FILE:NAME, got {ref!r}")
    doc = (resolver or Resolver()).load(path)
    if name not in doc.names():
        raise UnresolvedReference(detail=ref)
    return doc.get(name)


# --------------------------------------------------------------------------
# emission


def _rows(t) -> list:
    return [[int(x) for x in row] for row in np.asarray(t)]


def emit_block(b: NatBlock) -> str:
    out = [f"@{b.kind} {b.name}"]
    for key in HEADER_ORDER:
        if key in b.headers:
            out.append(" ".join([key, *map(str, b.headers[key])]))
    for key in TABLE_ORDER:
        if key not in b.tables:
            continue
        if key == "adds":
            out.append(f"adds {len(b.tables[key])}:")
            rows = [r for t in b.tables[key] for r in t]
        else:
            out.append(f"{key}:")
            rows = b.tables[key]
        out.extend(" ".join(str(int(x)) for x in r) for r in rows)
    return "\n".join(out) + "\n"


def emit(doc: NatDocument) -> str:
    return "\n".join(emit_block(b) for b in doc.blocks)


def canonicalize(text: str) -> str:
    return emit(NatDocument(parse_blocks(text)))


def monoid_block(name: str, M: FiniteMonoid, labels: bool = True) -> NatBlock:
    headers = {"order": [M.order]}
    if labels and list(M.labels) != [str(i) for i in range(M.order)]:
        headers["labels"] = list(M.labels)
    return NatBlock("monoid", name, headers, {"table": _rows(M.mul)})


def group_block(name: str, G: FiniteAbelianGroup) -> NatBlock:
    return NatBlock("group", name, {"order": [G.order]}, {"add": _rows(G.add)})


def nearring_block(name: str, N: NearRing, monoid_ref: str) -> NatBlock:
    return NatBlock("nearring", name, {"monoid": [monoid_ref]}, {"add": _rows(N.add)})


def module_block(name: str, V: MModule, monoid_ref: str) -> NatBlock:
    return NatBlock("module", name, {"order": [V.order], "monoid": [monoid_ref]},
                    {"add": _rows(V.group.add), "act": _rows(V.act)})


def multinearring_block(name: str, R: MultiNearRing, monoid_ref: str) -> NatBlock:
    return NatBlock("multinearring", name, {"monoid": [monoid_ref]},
                    {"adds": [_rows(N.add) for N in R.designated]})


def morphism_block(name: str, f: ModuleMorphism, dom_ref: str, cod_ref: str) -> NatBlock:
    return NatBlock("morphism", name, {"dom": [dom_ref], "cod": [cod_ref]}, {"map": [_rows([f.map])[0]]})


def write_atomic(path: str, text: str) -> None:
    tmp = f"{path}.tmp{os.getpid()}"
    with open(tmp, "w", encoding="utf-8") as fh:
        fh.write(text)
    os.replace(tmp, path)
