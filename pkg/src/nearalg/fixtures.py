"""Curated structures: small monoids, near-rings, modules and seeded module corpora."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .andre import MultiNearRing, validate_multinearring
from .core import (
    FiniteAbelianGroup,
    FiniteMonoid,
    cyclic_group,
    monoid_from_group,
    multiplicative_monoid_mod,
    validate_abelian_group,
    validate_monoid,
)
from .enumeration import EnumerationTask, enumerate_nearrings
from .errors import AlgebraError
from .modules import MModule, product, validate_module, zero_module
from .nearrings import (
    NearRing,
    dickson_fixture,
    fun_nearring,
    hash_construction,
    nearring_from_tables,
    ring_zn,
    transport_addition,
)

Z9_PHI = (0, 1, 2, 6, 4, 5, 3, 7, 8)  # swaps [3] and [6]


# --------------------------------------------------------------------------
# groups


def elementary_group(p: int, k: int) -> FiniteAbelianGroup:
    n = p ** k
    digits = np.array([[(x // p ** i) % p for i in range(k)] for x in range(n)])
    w = p ** np.arange(k)
    add = ((digits[:, None, :] + digits[None, :, :]) % p) @ w
    return validate_abelian_group(n, add)


def product_group(a: int, b: int) -> FiniteAbelianGroup:
    """ℤ/a × ℤ/b with (x, y) at index x·b + y."""
    idx = np.arange(a * b)
    x, y = idx // b, idx % b
    add = ((x[:, None] + x[None, :]) % a) * b + (y[:, None] + y[None, :]) % b
    return validate_abelian_group(a * b, add)


@lru_cache(maxsize=None)
def small_groups(max_order: int) -> tuple:
    """One representative per isomorphism class of abelian group, |G| <= 8."""
    if max_order > 8:
        raise ValueError("only orders up to 8 are catalogued")
    out = []
    for n in range(1, max_order + 1):
        out.append((f"Z{n}", cyclic_group(n)))
        if n == 4:
            out.append(("Z2xZ2", product_group(2, 2)))
        if n == 8:
            out.append(("Z2xZ4", product_group(2, 4)))
            out.append(("Z2^3", elementary_group(2, 3)))
    return tuple(out)


# --------------------------------------------------------------------------
# monoids


def trivial_monoid() -> FiniteMonoid:
    return validate_monoid(1, ["1"], [[0]])


def m2() -> FiniteMonoid:
    return multiplicative_monoid_mod(2)


def m3() -> FiniteMonoid:
    return multiplicative_monoid_mod(3)


def c2() -> FiniteMonoid:
    return monoid_from_group(cyclic_group(2))


def klein() -> FiniteMonoid:
    return monoid_from_group(product_group(2, 2))


def or_monoid() -> FiniteMonoid:
    return validate_monoid(2, ["0", "1"], [[0, 1], [1, 1]])


def z4_monoid() -> FiniteMonoid:
    return multiplicative_monoid_mod(4)


def f2xf2_monoid() -> FiniteMonoid:
    idx = np.arange(4)
    a, b = idx // 2, idx % 2
    return validate_monoid(4, None, (a[:, None] & a[None, :]) * 2 + (b[:, None] & b[None, :]))


def gf4() -> NearRing:
    # GF(2)[w]/(w²+w+1), a + b·w at index 2a + b
    idx = np.arange(4)
    a, b = idx // 2, idx % 2
    add = (a[:, None] ^ a[None, :]) * 2 + (b[:, None] ^ b[None, :])
    bb = b[:, None] * b[None, :]
    re = (a[:, None] * a[None, :] + bb) % 2
    im = (a[:, None] * b[None, :] + b[:, None] * a[None, :] + bb) % 2
    return nearring_from_tables(re * 2 + im, add, ["0", "w", "1", "1+w"])


def hash_z2() -> NearRing:
    return hash_construction(ring_zn(2), 1)


def fun_z2() -> NearRing:
    return fun_nearring(cyclic_group(2))


def q8_monoid() -> FiniteMonoid:
    return dickson_fixture().monoid


def z9_monoid() -> FiniteMonoid:
    return multiplicative_monoid_mod(9)


def small_monoids() -> dict[str, FiniteMonoid]:
    """Fixture monoids of order <= 4."""
    return {
        "M1": trivial_monoid(),
        "M2": m2(),
        "OR": or_monoid(),
        "C2": c2(),
        "M3": m3(),
        "C3": monoid_from_group(cyclic_group(3)),
        "Z4": z4_monoid(),
        "C4": monoid_from_group(cyclic_group(4)),
        "Klein": klein(),
        "F2xF2": f2xf2_monoid(),
        "GF4": gf4().monoid,
        "HashZ2": hash_z2().monoid,
        "FunZ2": fun_z2().monoid,
    }


def upper_triangular_z2() -> NearRing:
    """Upper triangular 2×2 matrices over ℤ/2: [[a, b], [0, c]] at index 4a + 2b + c."""
    idx = np.arange(8)
    a, b, c = idx // 4, (idx // 2) % 2, idx % 2
    add = (a[:, None] ^ a[None, :]) * 4 + (b[:, None] ^ b[None, :]) * 2 + (c[:, None] ^ c[None, :])
    ma = a[:, None] & a[None, :]
    mb = ((a[:, None] & b[None, :]) ^ (b[:, None] & c[None, :]))
    mc = c[:, None] & c[None, :]
    return nearring_from_tables(ma * 4 + mb * 2 + mc, add)


# --------------------------------------------------------------------------
# the ℤ/9 example


@dataclass(frozen=True)
class Z9Example:
    plus: NearRing
    plus_phi: NearRing
    R: MultiNearRing
    V: MModule


@lru_cache(maxsize=None)
def z9_example() -> Z9Example:
    plus = ring_zn(9)
    phi = transport_addition(plus, Z9_PHI)
    R = validate_multinearring(plus.monoid, [plus, phi])
    V = product([plus.module, phi.module])
    return Z9Example(plus, phi, R, V)


# --------------------------------------------------------------------------
# modules


def gf3_power(k: int) -> MModule:
    N = ring_zn(3)
    return product([N.module] * k) if k else zero_module(N.monoid)


@lru_cache(maxsize=None)
def dickson_j() -> MModule:
    return dickson_fixture().module


@lru_cache(maxsize=None)
def dickson_j2() -> MModule:
    J = dickson_j()
    return product([J, J])


def trivial_action(M: FiniteMonoid, G: FiniteAbelianGroup) -> MModule:
    return validate_module(M, G, np.tile(np.arange(G.order), (M.order, 1)))


@lru_cache(maxsize=None)
def enumerated_multinearring(M: FiniteMonoid) -> MultiNearRing:
    res = enumerate_nearrings(EnumerationTask(M))
    return validate_multinearring(M, res.additions)


# --------------------------------------------------------------------------
# module corpora


def _endomorphisms(G: FiniteAbelianGroup) -> np.ndarray:
    """All group endomorphisms of G as rows of an (e, |G|) array."""
    n = G.order
    add = G.add.astype(np.intp)
    # greedy generating set
    gens: list[int] = []
    span = {G.zero}
    for x in range(n):
        if x not in span:
            gens.append(x)
            grow = set(span)
            frontier = list(span)
            while frontier:
                nxt = []
                for s in frontier:
                    for g in gens:
                        t = int(add[s, g])
                        if t not in grow:
                            grow.add(t)
                            nxt.append(t)
                frontier = nxt
            span = grow
    out = []
    for imgs in itertools.product(range(n), repeat=len(gens)):
        f = np.full(n, -1, dtype=np.intp)
        f[G.zero] = G.zero
        frontier = [G.zero]
        ok = True
        while frontier and ok:
            nxt = []
            for s in frontier:
                for g, c in zip(gens, imgs):
                    t = int(add[s, g])
                    val = int(add[f[s], c])
                    if f[t] < 0:
                        f[t] = val
                        nxt.append(t)
                    elif f[t] != val:
                        ok = False
                        break
                if not ok:
                    break
            frontier = nxt
        if ok and np.array_equal(f[add], add[f[:, None], f[None, :]]):
            out.append(f)
    return np.array(out, dtype=np.intp).reshape(-1, n)


@lru_cache(maxsize=None)
def m2_module_corpus(max_order: int = 6) -> tuple:
    """Every M2-module on the catalogued groups: 1 acts trivially, 0 by an idempotent endomorphism."""
    M = m2()
    out = []
    for name, G in small_groups(max_order):
        ar = np.arange(G.order)
        for e in _endomorphisms(G):
            if np.array_equal(e[e], e):
                act = np.stack([e, ar])
                out.append((f"{name}/e={''.join(map(str, e))}", validate_module(M, G, act)))
    return tuple(out)


@lru_cache(maxsize=None)
def _m3_actions(name: str, G: FiniteAbelianGroup) -> tuple:
    """All (e, t) pairs: e idempotent, t involutive, e∘t = t∘e = e."""
    E = _endomorphisms(G)
    ar = np.arange(G.order)
    idem = [e for e in E if np.array_equal(e[e], e)]
    invol = [t for t in E if np.array_equal(t[t], ar)]
    out = []
    for e in idem:
        for t in invol:
            if np.array_equal(e[t], e) and np.array_equal(t[e], e):
                out.append(np.stack([e, ar, t]))
    return tuple(out)


@lru_cache(maxsize=None)
def m3_module_corpus(count: int = 120, seed: int = 20240607, max_order: int = 8) -> tuple:
    """Seeded random M3-modules with |V| <= max_order (0 ↦ e, 1 ↦ id, 2 ↦ t)."""
    M = m3()
    rng = random.Random(seed)
    pools = [(name, G, _m3_actions(name, G)) for name, G in small_groups(max_order)]
    out = []
    for k in range(count):
        name, G, acts = rng.choice(pools)
        act = acts[rng.randrange(len(acts))]
        out.append((f"{name}#{k}", validate_module(M, G, act)))
    return tuple(out)


def random_module(M: FiniteMonoid, G: FiniteAbelianGroup, rng: random.Random, tries: int = 200):
    """A random action of M on G: images of monoid elements drawn from End(G) until axioms hold."""
    E = _endomorphisms(G)
    for _ in range(tries):
        rows = E[[rng.randrange(len(E)) for _ in range(M.order)]].copy()
        rows[M.one] = np.arange(G.order)
        try:
            return validate_module(M, G, rows)
        except AlgebraError:
            continue
    return trivial_action(M, G)


def andre_fixtures() -> dict[str, tuple[MModule, MultiNearRing]]:
    z9 = z9_example()
    gf3 = validate_multinearring(m3(), [ring_zn(3)])
    return {
        "z9": (z9.V, z9.R),
        "J2": (dickson_j2(), enumerated_multinearring(q8_monoid())),
        "GF3^3": (gf3_power(3), gf3),
    }

