"""Theorem suites: each criterion replays a claim on the fixture corpus and collects violations."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from . import fixtures as fx
from . import oracles
from .andre import (
    Decomposer,
    MultiNearRing,
    check_andre,
    check_nvs,
    check_ring_module_equiv,
    check_tfae,
    quasi_kernel,
    validate_certificate,
    validate_multinearring,
)
from .core import square_roots_of_one, validate_abelian_group
from .enumeration import EnumerationTask, enumerate_nearrings, oracle_enumerate_nearrings
from .errors import AlgebraError
from .modules import (
    MModule,
    enumerate_submodules,
    factorize,
    product,
    quotient,
    closure_bool,
    random_morphism,
    submodule_as_module,
    zero_module,
)
from .subsets import to_bool
from .nearrings import (
    NearRing,
    classify,
    dickson_fixture,
    hash_construction,
    multiplicative_order_census,
    ring_zn,
    transport_addition,
    verify_lema,
)

DEFAULT_SEED = 20240607


@dataclass
class CriterionResult:
    number: int
    title: str
    ok: bool = True
    violations: list = field(default_factory=list)
    details: dict = field(default_factory=dict)
    elapsed: float = 0.0

    def fail(self, what: str) -> None:
        self.ok = False
        self.violations.append(what)

    def check(self, cond: bool, what: str) -> bool:
        if not cond:
            self.fail(what)
        return cond

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return f"[{status}] criterion {self.number:2d}: {self.title} ({self.elapsed:.2f}s)"


def _timed(number: int, title: str):
    def deco(fn):
        def run(**kw) -> CriterionResult:
            res = CriterionResult(number, title)
            t0 = time.perf_counter()
            try:
                fn(res, **kw)
            except AlgebraError as exc:
                res.fail(f"unexpected {exc!r}")
            res.elapsed = time.perf_counter() - t0
            return res
        run.__name__ = fn.__name__
        run.__doc__ = fn.__doc__
        return run
    return deco


HASH_RINGS = (2, 3, 4, 6)
HASH_POWERS = (1, 2, 3)


def hash_products(extra: list = ()) -> list[NearRing]:
    """Every near-ring the # construction yields on the criterion grid."""
    out = []
    for k in HASH_RINGS:
        for n in HASH_POWERS:
            try:
                out.append(hash_construction(ring_zn(k), n))
            except AlgebraError:
                pass
    return out + list(extra)


@_timed(1, "#-construction over Z/2, n=1")
def criterion_1(res: CriterionResult, **_):
    H = hash_construction(ring_zn(2), 1)
    rep = classify(H)
    res.check(rep.is_ring, "not a ring")
    k = 2
    idx = {(a, b): a * k + b for a in range(k) for b in range(k)}
    sols = set(square_roots_of_one(H.mul, H.one))
    res.check(sols == {idx[1, 0], idx[1, 1]}, f"η²=1 solutions {sorted(sols)}")
    res.check(H.group.neg[idx[1, 0]] == idx[1, 0], "-(1,0) != (1,0)")
    res.check(H.monoid.minus_one == idx[1, 1], f"minus_one = {H.monoid.minus_one}")
    res.details = {"eta_solutions": sorted(sols), "minus_one": H.monoid.minus_one}


@_timed(2, "#-construction iff laws")
def criterion_2(res: CriterionResult, **_):
    grid = {}
    for k in HASH_RINGS:
        R = ring_zn(k)
        for n in HASH_POWERS:
            law_mul = oracles.multiplicative_power_law(R, n)
            law_add = oracles.additive_power_law(R, n)
            try:
                H = hash_construction(R, n)
                built, ring = True, classify(H).is_ring
            except AlgebraError:
                built, ring = False, False
            grid[f"Z{k},n={n}"] = (built, ring)
            res.check(built == law_mul, f"Z/{k} n={n}: built={built} law={law_mul}")
            res.check(ring == (law_mul and law_add), f"Z/{k} n={n}: ring={ring} laws={law_mul, law_add}")
    res.details = {"grid": grid}


@_timed(3, "Z/9 example: transported addition and product module")
def criterion_3(res: CriterionResult, **_):
    z = fx.z9_example()
    plus = ring_zn(9)
    res.check(transport_addition(plus, fx.Z9_PHI) == z.plus_phi, "transport did not validate")
    andre = check_andre(z.V, z.R)
    nvs = check_nvs(z.V)
    res.check(andre.is_andre, f"check_andre false, QK2 fails at {andre.qk2_failure}")
    res.check(not nvs.is_nvs, "check_nvs true")
    res.check(nvs.failure == ("monoid-not-scalar-group", ("non-invertible", 3)),
              f"nvs failure {nvs.failure}")
    res.details = {"qstar_size": bin(andre.qstar).count("1"), "qk2_failure": andre.qk2_failure,
                   "nvs_failure": nvs.failure}


@_timed(4, "enumeration equals the oracle on order <= 4")
def criterion_4(res: CriterionResult, **_):
    counts = {}
    for name, M in fx.small_monoids().items():
        fast = enumerate_nearrings(EnumerationTask(M))
        slow = oracle_enumerate_nearrings(M)
        counts[name] = len(fast)
        res.check(set(fast.additions) == set(slow.additions), f"{name}: {len(fast)} vs {len(slow)}")
    res.check(counts.get("M2") == 1 and counts.get("M3") == 1, f"M2/M3 counts {counts}")
    res.details = {"counts": counts}


@_timed(5, "Dickson near-field suite")
def criterion_5(res: CriterionResult, **_):
    D = dickson_fixture()
    rep = classify(D)
    res.check(rep.is_nearfield and not rep.is_ring, "classification")
    census = multiplicative_order_census(D)
    res.check(census == {1: 1, 2: 1, 4: 6}, f"census {census}")
    J, J2 = fx.dickson_j(), fx.dickson_j2()
    res.check(check_nvs(J).is_nvs, "J not a near-vector space")
    res.check(check_nvs(J2).is_nvs, "J² not a near-vector space")
    subs = enumerate_submodules(J2)
    for W in subs:
        S, _ = submodule_as_module(J2, W)
        qw = to_bool(quasi_kernel(S).qv, S.order)
        res.check(bool(closure_bool(S, qw).all()), f"submodule {W.carrier:#x} not generated by Q(W)")
    res.details = {"census": census, "submodules_of_J2": len(subs)}


def lema_corpus() -> list[tuple[str, NearRing]]:
    out = [(f"hash#{i}", N) for i, N in enumerate(hash_products())]
    z = fx.z9_example()
    out += [("Z9", z.plus), ("Z9phi", z.plus_phi), ("dickson", dickson_fixture())]
    monoids = dict(fx.small_monoids())
    monoids["Q8+0"] = fx.q8_monoid()
    monoids["Z9"] = fx.z9_monoid()
    for name, M in monoids.items():
        for i, t in enumerate(enumerate_nearrings(EnumerationTask(M)).additions):
            out.append((f"{name}/enum#{i}", NearRing(M, validate_abelian_group(M.order, t))))
    return out


@_timed(6, "near-field => FA => SA and η²=1 only for ±1")
def criterion_6(res: CriterionResult, extra: list = (), **_):
    corpus = lema_corpus() + list(extra)
    stats = {"nearfields": 0, "fa": 0}
    for name, N in corpus:
        try:
            rep = verify_lema(N)
        except AlgebraError as exc:
            res.fail(f"{name}: {exc}")
            continue
        stats["nearfields"] += rep.is_nearfield
        stats["fa"] += rep.fa
    res.details = {"near_rings": len(corpus), **stats}


def _andre_or_fail(res, V: MModule, R: MultiNearRing, what: str) -> bool:
    rep = check_andre(V, R)
    return res.check(rep.is_andre, f"{what}: QK2 fails at {rep.qk2_failure}")


@_timed(7, "closure under submodules, quotients and products")
def criterion_7(res: CriterionResult, fixtures: Optional[dict] = None, **_):
    fixtures = fixtures if fixtures is not None else fx.andre_fixtures()
    per = {}
    for name, (V, R) in fixtures.items():
        before = len(res.violations)
        subs = enumerate_submodules(V)
        for W in subs:
            S, _ = submodule_as_module(V, W)
            _andre_or_fail(res, S, R, f"{name} submodule {W.carrier:#x}")
            Q, _ = quotient(V, W)
            _andre_or_fail(res, Q, R, f"{name} quotient by {W.carrier:#x}")
        for other, (U, R2) in fixtures.items():
            if other >= name and U.monoid == V.monoid and R2.designated == R.designated:
                _andre_or_fail(res, product([V, U]), R, f"{name} x {other}")
        per[name] = {"submodules": len(subs), "violations": len(res.violations) - before}
    res.details = per


def andre_corpus(seed: int = DEFAULT_SEED) -> list[tuple[str, MModule, list]]:
    """The criterion-8 corpus: all M2-modules with |V| <= 6 and seeded random M3-modules."""
    out = []
    r2 = fx.enumerated_multinearring(fx.m2())
    r3 = fx.enumerated_multinearring(fx.m3())
    for name, V in fx.m2_module_corpus(6):
        out.append((f"M2:{name}", V, [validate_multinearring(fx.m2(), []), r2]))
    for name, V in fx.m3_module_corpus(120, seed, 8):
        out.append((f"M3:{name}", V, [validate_multinearring(fx.m3(), []), r3]))
    return out


@_timed(8, "Q* decision agrees with the powerset oracle")
def criterion_8(res: CriterionResult, seed: int = DEFAULT_SEED, **_):
    n = yes = 0
    for name, V, Rs in andre_corpus(seed):
        for R in Rs:
            fast = check_andre(V, R).is_andre
            slow = oracles.andre_by_powerset(V, R) is not None
            n += 1
            yes += fast
            res.check(fast == slow, f"{name} |N|={len(R)}: fast={fast} oracle={slow}")
    res.details = {"instances": n, "andre": yes}


@_timed(9, "single ring: André equals ring-module")
def criterion_9(res: CriterionResult, seed: int = DEFAULT_SEED, **_):
    n = 0
    for name, V, Rs in andre_corpus(seed):
        for R in Rs:
            if len(R) != 1:
                continue
            n += 1
            got = check_ring_module_equiv(V, R)
            direct = oracles.distributive_everywhere(V, R.designated[0])
            res.check(got == direct, f"{name}: andre={got} direct={direct}")
    res.details = {"instances": n}


def scalar_group_fixtures(seed: int = DEFAULT_SEED) -> list[tuple[str, MModule, MultiNearRing]]:
    out = []
    r2 = fx.enumerated_multinearring(fx.m2())
    r3 = fx.enumerated_multinearring(fx.m3())
    rq = fx.enumerated_multinearring(fx.q8_monoid())
    for name, V in fx.m2_module_corpus(6):
        out.append((f"M2:{name}", V, r2))
    for k in range(4):
        out.append((f"GF3^{k}", fx.gf3_power(k), r3))
    for name, V in fx.m3_module_corpus(120, seed, 8):
        out.append((f"M3:{name}", V, r3))
    out += [("J", fx.dickson_j(), rq), ("J2", fx.dickson_j2(), rq), ("0/Q8", zero_module(fx.q8_monoid()), rq),
            ("trivial/Q8", fx.trivial_action(fx.q8_monoid(), fx.elementary_group(3, 2)), rq)]
    return out


@_timed(10, "near-vector spaces are the André modules; TFAE and decomposition")
def criterion_10(res: CriterionResult, seed: int = DEFAULT_SEED, **_):
    nvs_count = certs = tfae = 0
    for name, V, R in scalar_group_fixtures(seed):
        nvs = check_nvs(V).is_nvs
        andre = check_andre(V, R).is_andre
        res.check(nvs == andre, f"{name}: nvs={nvs} andre={andre}")
        if not nvs:
            continue
        nvs_count += 1
        try:
            check_tfae(V)
            tfae += 1
        except AlgebraError as exc:
            res.fail(f"{name}: tfae {exc}")
        try:
            D = Decomposer(V, R)
        except AlgebraError as exc:
            res.fail(f"{name}: decomposition hypotheses {exc}")
            continue
        bfs = oracles.min_presentation_lengths(V, oracles.quasi_kernel(V))
        for v in range(V.order):
            cert = D.decompose(v)
            certs += 1
            res.check(validate_certificate(V, cert, D.qv), f"{name}: certificate for {v}")
            res.check(bfs.get(v) == cert.m_v, f"{name}: m_v({v}) = {cert.m_v} vs {bfs.get(v)}")
    res.details = {"near_vector_spaces": nvs_count, "tfae": tfae, "certificates": certs}


def morphism_fixtures() -> list[tuple[str, MModule, MultiNearRing]]:
    """Modules verified André (by the decision procedure) that morphisms run between."""
    z = fx.z9_example()
    rq = fx.enumerated_multinearring(fx.q8_monoid())
    r3 = validate_multinearring(fx.m3(), [ring_zn(3)])
    out = [
        ("Z9+", z.plus.module, z.R),
        ("Z9phi", z.plus_phi.module, z.R),
        ("Z9+^2", product([z.plus.module] * 2), z.R),
        ("J", fx.dickson_j(), rq),
        ("J2", fx.dickson_j2(), rq),
        ("GF3^1", fx.gf3_power(1), r3),
        ("GF3^2", fx.gf3_power(2), r3),
        ("GF3^3", fx.gf3_power(3), r3),
    ]
    return out


@_timed(11, "kernels and cokernels of morphisms stay André")
def criterion_11(res: CriterionResult, seed: int = DEFAULT_SEED, count: int = 60, **_):
    rng = random.Random(seed)
    mods = morphism_fixtures()
    for name, V, R in mods:
        res.check(check_andre(V, R).is_andre, f"fixture {name} not André")
    pairs = [(a, b) for a in mods for b in mods if a[1].monoid == b[1].monoid
             and a[2].designated == b[2].designated]
    done = 0
    for _ in range(count):
        (dn, dom, R), (cn, cod, _) = rng.choice(pairs)
        f = random_morphism(dom, cod, rng)
        fac = factorize(f)
        res.check(dom.order == fac.kernel.size * fac.image.size, f"{dn}->{cn}: |dom| != |ker||im|")
        K, _ = submodule_as_module(dom, fac.kernel)
        _andre_or_fail(res, K, R, f"kernel of {dn}->{cn}")
        _andre_or_fail(res, fac.cokernel, R, f"cokernel of {dn}->{cn}")
        done += 1
    res.details = {"morphisms": done}


CRITERIA: dict[int, Callable[..., CriterionResult]] = {
    1: criterion_1, 2: criterion_2, 3: criterion_3, 4: criterion_4, 5: criterion_5, 6: criterion_6,
    7: criterion_7, 8: criterion_8, 9: criterion_9, 10: criterion_10, 11: criterion_11,
}

SUITES = {
    "hash": (1, 2),
    "lema": (6,),
    "closure": (7, 11),
    "singleR": (9,),
    "andremodule": (10,),
    "all": tuple(CRITERIA),
}


def run_suite(name: str, **kw) -> list[CriterionResult]:
    return [CRITERIA[n](**kw) for n in SUITES[name]]
