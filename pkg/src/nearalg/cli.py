"""Command-line front end. Every verb prints one JSON report.

Exit codes: 0 the property holds, 1 it fails (with witnesses), 2 bad input or usage.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from typing import Optional, Sequence

from . import verify
from .andre import (
    MultiNearRing,
    check_andre,
    check_nvs,
    check_tfae,
    decompose_quasikernel,
    quasi_kernel,
    validate_multinearring,
)
from .catalog import catalog_scan
from .core import FiniteAbelianGroup, FiniteMonoid, check_scalar_group
from .enumeration import EnumerationTask, enumerate_nearrings
from .errors import AlgebraError, NatSyntaxError, UnresolvedReference, ValidationError
from .fixtures import enumerated_multinearring
from .modules import (
    MModule,
    ModuleMorphism,
    check_action_properties,
    enumerate_submodules,
    factorize,
    generated_submodule,
    product,
    quotient,
)
from .natfile import (
    NatDocument,
    Resolver,
    emit,
    module_block,
    monoid_block,
    multinearring_block,
    write_atomic,
)
from .nearrings import NearRing, classify
from .subsets import members

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class Report:
    def __init__(self, command: str):
        self.command = command
        self.ok = True
        self.witnesses: list = []
        self.details: dict = {}
        self.t0 = time.perf_counter()

    def witness(self, label: str, *elements, names: Optional[Sequence[str]] = None) -> None:
        w = {"label": label, "elements": [_plain(e) for e in elements]}
        if names is not None:
            w["names"] = list(names)
        self.witnesses.append(w)

    def failed(self, label: str, *elements, names=None) -> None:
        self.ok = False
        self.witness(label, *elements, names=names)

    def as_dict(self) -> dict:
        return {
            "command": self.command,
            "ok": self.ok,
            "witnesses": self.witnesses,
            "details": _plain(self.details),
            "elapsed_ms": round((time.perf_counter() - self.t0) * 1000, 3),
        }


def _plain(x):
    """JSON-safe copy (numpy scalars, tuples, sets, int dict keys)."""
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        return [_plain(v) for v in x]
    if hasattr(x, "item") and not isinstance(x, (str, bytes)):
        return x.item()
    return x


# --------------------------------------------------------------------------
# reference resolution


class Context:
    def __init__(self, args):
        self.args = args
        self.resolver = Resolver()

    def get(self, ref: str, *kinds):
        path, sep, name = ref.rpartition(":")
        if not sep or not path:
            raise UsageError(f"expected FILE.nat:NAME, got {ref!r}")
        doc = self.resolver.load(path)
        if name not in doc.names():
            raise UnresolvedReference(detail=ref)
        obj = doc.get(name)
        if kinds and not isinstance(obj, kinds):
            want = "/".join(k.__name__ for k in kinds)
            raise UsageError(f"{ref} is a {type(obj).__name__}, expected {want}")
        return obj


def _monoid_of(obj) -> FiniteMonoid:
    if isinstance(obj, FiniteMonoid):
        return obj
    if isinstance(obj, (NearRing, MModule, MultiNearRing)):
        return obj.monoid
    raise UsageError(f"{type(obj).__name__} has no monoid")


def _module_of(obj) -> MModule:
    if isinstance(obj, MModule):
        return obj
    if isinstance(obj, NearRing):
        return obj.module
    raise UsageError(f"{type(obj).__name__} is not a module")


def _element(V: MModule, text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise UsageError(f"element must be an index, got {text!r}")
    if not 0 <= v < V.order:
        raise UsageError(f"element {v} out of range for order {V.order}")
    return v


# --------------------------------------------------------------------------
# verbs


def cmd_check(ctx: Context, rep: Report) -> None:
    a = ctx.args
    what = a.what
    if what in ("monoid", "group", "nearring", "module"):
        kinds = {"monoid": (FiniteMonoid,), "group": (FiniteAbelianGroup,),
                 "nearring": (NearRing,), "module": (MModule,)}[what]
        try:
            obj = ctx.get(a.refs[0], *kinds)
        except ValidationError as exc:
            rep.failed(exc.cause.tag, *exc.cause.witness)
            rep.details["reason"] = str(exc.cause)
            return
        rep.details["order"] = obj.order
        if isinstance(obj, FiniteMonoid):
            rep.details.update(one=obj.one, zero=obj.zero, minus_one=obj.minus_one)
        elif isinstance(obj, FiniteAbelianGroup):
            rep.details.update(zero=obj.zero)
        elif isinstance(obj, NearRing):
            c = classify(obj)
            rep.details.update(nearfield=c.is_nearfield, ring=c.is_ring, fa=c.fa, sa=c.sa,
                               s1=c.s1_for_minus1, witnesses=c.witnesses)
        return
    if what == "scalar-group":
        M = _monoid_of(ctx.get(a.refs[0]))
        sg = check_scalar_group(M)
        rep.details.update(zero=sg.zero, minus_one=sg.minus_one, eta_solutions=sorted(sg.eta_solutions))
        if not sg.is_scalar_group:
            tag, elem = sg.failure_witness
            if elem is None:
                rep.failed(tag)
            else:
                rep.failed(tag, elem, names=[M.label(elem)])
        return
    if what == "fa-sa":
        V = _module_of(ctx.get(a.refs[0], MModule, NearRing))
        p = check_action_properties(V)
        rep.details.update(fa=p.fa, sa=p.sa)
        if not p.fa:
            rep.failed("fa", *p.fa_witness)
        if p.sa is False:
            rep.failed("sa", p.sa_witness)
        return
    if what == "nvs":
        V = _module_of(ctx.get(a.refs[0], MModule, NearRing))
        n = check_nvs(V)
        rep.details.update(scalar_group=n.scalar_group.is_scalar_group, fa=n.action.fa,
                           sa=n.action.sa, qv_generates=n.qv_generates)
        if not n.is_nvs:
            tag, wit = n.failure
            rep.ok = False
            rep.details["failure"] = tag
            if tag == "monoid-not-scalar-group":
                sub, elem = wit
                rep.witness(sub, *(() if elem is None else (elem,)))
            elif wit is not None:
                rep.witness(tag, *(wit if isinstance(wit, tuple) else (wit,)))
            else:
                rep.witness(tag)
        return
    if what == "andre":
        if len(a.refs) != 2:
            raise UsageError("check andre MODULE MULTINEARRING")
        V = _module_of(ctx.get(a.refs[0], MModule, NearRing))
        R = ctx.get(a.refs[1], MultiNearRing)
        r = check_andre(V, R)
        rep.ok = r.is_andre
        rep.details.update(qstar=members(r.qstar), nearring_witness=r.nearring_witness)
        if not r.is_andre:
            rep.witness("qk2-failure", r.qk2_failure)
        return
    raise UsageError(f"unknown check {what!r}")


def cmd_quasikernel(ctx, rep):
    V = _module_of(ctx.get(ctx.args.module, MModule, NearRing))
    qk = quasi_kernel(V)
    rep.details.update(qv=members(qk.qv), size=len(members(qk.qv)))


def cmd_enumerate(ctx, rep):
    a = ctx.args
    M = _monoid_of(ctx.get(a.monoid))
    res = enumerate_nearrings(EnumerationTask(M, max_results=a.max, dedup_by_automorphism=a.dedup_auto,
                                              workers=max(1, a.threads)))
    rep.details.update(count=len(res), complete=res.complete, additions=res.additions)
    if res.orbits is not None:
        rep.details["orbits"] = res.orbits
    if a.emit:
        R = validate_multinearring(M, res.additions)
        write_atomic(a.emit, emit(NatDocument([monoid_block("M", M), multinearring_block("N", R, "M")])))
        rep.details["written"] = a.emit


def _write_module(path, V):
    write_atomic(path, emit(NatDocument([monoid_block("M", V.monoid), module_block("V", V, "M")])))


def cmd_product(ctx, rep):
    Vs = [_module_of(ctx.get(r, MModule, NearRing)) for r in ctx.args.modules]
    P = product(Vs)
    rep.details.update(order=P.order, factors=[V.order for V in Vs])
    if ctx.args.out:
        _write_module(ctx.args.out, P)
        rep.details["written"] = ctx.args.out


def cmd_quotient(ctx, rep):
    V = _module_of(ctx.get(ctx.args.module, MModule, NearRing))
    gens = [_element(V, t) for t in ctx.args.generators]
    W = generated_submodule(V, gens)
    Q, proj = quotient(V, W)
    rep.details.update(submodule=W.elements(), order=Q.order, projection=proj.map.tolist())
    if ctx.args.out:
        _write_module(ctx.args.out, Q)
        rep.details["written"] = ctx.args.out


def cmd_submodules(ctx, rep):
    V = _module_of(ctx.get(ctx.args.module, MModule, NearRing))
    subs = enumerate_submodules(V)
    rep.details.update(count=len(subs), submodules=[W.elements() for W in subs])


def cmd_factorize(ctx, rep):
    f = ctx.get(ctx.args.morphism, ModuleMorphism)
    fac = factorize(f)
    rep.details.update(kernel=fac.kernel.elements(), image=fac.image.elements(),
                       cokernel_order=fac.cokernel.order)


def _multi_for(ctx, V, ref) -> MultiNearRing:
    if ref:
        return ctx.get(ref, MultiNearRing)
    return enumerated_multinearring(V.monoid)


def cmd_decompose(ctx, rep):
    V = _module_of(ctx.get(ctx.args.module, MModule, NearRing))
    v = _element(V, ctx.args.element)
    R = _multi_for(ctx, V, ctx.args.multi)
    try:
        cert = decompose_quasikernel(V, v, R)
    except AlgebraError as exc:
        rep.failed(exc.tag, *exc.witness)
        rep.details["reason"] = str(exc)
        return
    rep.details.update(target=cert.target, parts=cert.parts, m_v=cert.m_v,
                       trail=[vars(s) for s in cert.trail])


def cmd_tfae(ctx, rep):
    V = _module_of(ctx.get(ctx.args.module, MModule, NearRing))
    try:
        t = check_tfae(V)
    except AlgebraError as exc:
        rep.failed(exc.tag, *exc.witness)
        rep.details["reason"] = str(exc)
        return
    rep.details.update(vars(t))


def cmd_verify(ctx, rep):
    a = ctx.args
    kw = {"seed": a.seed}
    if a.file:
        doc = ctx.resolver.load(a.file, eager=True)
        extra = [(f"{a.file}:{n}", o) for n, o in doc.objects.items() if isinstance(o, NearRing)]
        kw["extra"] = extra
    results = verify.run_suite(a.suite, **kw)
    for r in results:
        rep.details[f"criterion_{r.number}"] = {"title": r.title, "ok": r.ok, "elapsed_s": round(r.elapsed, 3),
                                                "violations": r.violations[:20], "details": r.details}
        if not r.ok:
            rep.ok = False
            rep.witness(f"criterion {r.number}", r.number)


def cmd_catalog(ctx, rep):
    path = catalog_scan(ctx.args.dir)
    rep.details.update(index=str(path), rows=sum(1 for _ in open(path)) - 1)


# --------------------------------------------------------------------------
# argument parsing


def _globals(p: argparse.ArgumentParser, suppress: bool) -> None:
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p.add_argument("--json", dest="json", action="store_true", default=d(True), help="JSON report (default)")
    p.add_argument("--text", dest="json", action="store_false", default=d(True), help="plain summary instead")
    p.add_argument("--seed", type=int, default=d(verify.DEFAULT_SEED), help="seed for randomized suites")
    p.add_argument("--threads", type=int, default=d(1), help="worker processes for enumeration")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="nearalg", description="Finite near-rings, modules and André modules.")
    _globals(ap, suppress=False)
    common = argparse.ArgumentParser(add_help=False)
    _globals(common, suppress=True)
    sub = ap.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("check", parents=[common])
    p.add_argument("what", choices=["monoid", "group", "nearring", "module", "scalar-group", "nvs", "andre", "fa-sa"])
    p.add_argument("refs", nargs="+")
    p.set_defaults(fn=cmd_check)

    p = sub.add_parser("quasikernel", parents=[common])
    p.add_argument("module")
    p.set_defaults(fn=cmd_quasikernel)

    p = sub.add_parser("enumerate", parents=[common])
    p.add_argument("what", choices=["nearrings"])
    p.add_argument("monoid")
    p.add_argument("--max", type=int, default=None)
    p.add_argument("--dedup-auto", action="store_true")
    p.add_argument("--emit", default=None, help="write the tables as a .nat file")
    p.set_defaults(fn=cmd_enumerate)

    p = sub.add_parser("product", parents=[common])
    p.add_argument("modules", nargs="+")
    p.add_argument("--out", default=None)
    p.set_defaults(fn=cmd_product)

    p = sub.add_parser("quotient", parents=[common])
    p.add_argument("module")
    p.add_argument("generators", nargs="*", help="elements generating the submodule")
    p.add_argument("--out", default=None)
    p.set_defaults(fn=cmd_quotient)

    p = sub.add_parser("submodules", parents=[common])
    p.add_argument("module")
    p.set_defaults(fn=cmd_submodules)

    p = sub.add_parser("factorize", parents=[common])
    p.add_argument("morphism")
    p.set_defaults(fn=cmd_factorize)

    p = sub.add_parser("decompose", parents=[common])
    p.add_argument("module")
    p.add_argument("element")
    p.add_argument("--multi", default=None, help="multi-near-ring (default: all near-rings on the monoid)")
    p.set_defaults(fn=cmd_decompose)

    p = sub.add_parser("tfae", parents=[common])
    p.add_argument("module")
    p.set_defaults(fn=cmd_tfae)

    p = sub.add_parser("verify", parents=[common])
    p.add_argument("suite", choices=list(verify.SUITES))
    p.add_argument("file", nargs="?", default=None)
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("catalog", parents=[common])
    p.add_argument("what", choices=["scan"])
    p.add_argument("dir")
    p.set_defaults(fn=cmd_catalog)
    return ap


def run_command(argv: Sequence[str]) -> tuple[dict, int]:
    """Parse and dispatch; returns (report dict, exit code)."""
    ap = build_parser()
    try:
        args = ap.parse_args(list(argv))
    except SystemExit as exc:
        rep = Report(" ".join(argv))
        rep.failed("usage")
        return rep.as_dict(), EXIT_USAGE if exc.code else EXIT_OK
    name = args.verb + ("" if not hasattr(args, "what") else f" {args.what}")
    rep = Report(name)
    code = EXIT_OK
    try:
        args.fn(Context(args), rep)
        code = EXIT_OK if rep.ok else EXIT_FAIL
    except (UsageError, UnresolvedReference, NatSyntaxError, ValidationError, OSError) as exc:
        rep.failed("input-error")
        rep.details["reason"] = str(exc)
        code = EXIT_USAGE
    except AlgebraError as exc:
        rep.failed(exc.tag, *exc.witness)
        rep.details["reason"] = str(exc)
        code = EXIT_FAIL
    return rep.as_dict(), code


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    report, code = run_command(argv)
    if "--text" in argv:
        status = "ok" if report["ok"] else "FAILED"
        print(f"{report['command']}: {status}")
        for w in report["witnesses"]:
            print(f"  {w['label']}: {w['elements']}")
    else:
        print(json.dumps(report, indent=2, sort_keys=False))
    return code


if __name__ == "__main__":
    sys.exit(main())
