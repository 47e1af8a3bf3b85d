"""Finite modules over finite monoids: closures, submodules, quotients,
products, morphisms and the free/scalar action predicates."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

import numpy as np

from .core import FiniteAbelianGroup, FiniteMonoid, first_true, frozen_table, index_dtype
from .errors import (
    BadShape,
    BoundExceeded,
    MixedMonoids,
    NotAction,
    NotAdditive,
    NotEndomorphism,
    NotEquivariant,
    NotSubmodule,
    NotUnital,
    TheoremViolation,
)
from .subsets import SubsetLike, as_mask, from_bool, members, popcount, to_bool

# Derived structures up to this order are re-validated from scratch; larger
# ones are certified by construction only (cubic scans become infeasible).
CERTIFY_LIMIT = 256
SUBMODULE_BOUND = 729


@dataclass(frozen=True, eq=False)
class MModule:
    monoid: FiniteMonoid
    group: FiniteAbelianGroup
    act: np.ndarray

    @property
    def order(self) -> int:
        return self.group.order

    @property
    def zero(self) -> int:
        return self.group.zero

    def __len__(self):
        return self.group.order

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, MModule):
            return NotImplemented
        return (self.monoid == other.monoid and self.group == other.group
                and np.array_equal(self.act, other.act))

    def __hash__(self):
        return hash((hash(self.monoid), hash(self.group), self.act.tobytes()))

    def __repr__(self):
        return f"MModule(|M|={self.monoid.order}, |V|={self.order})"


@dataclass(frozen=True, order=True)
class Submodule:
    size: int
    carrier: int

    def elements(self) -> list[int]:
        return members(self.carrier)

    def __contains__(self, v: int) -> bool:
        return bool(self.carrier >> v & 1)

    def __len__(self):
        return self.size


def submodule(mask: int) -> Submodule:
    return Submodule(popcount(mask), mask)


@dataclass(frozen=True, eq=False)
class ModuleMorphism:
    dom: MModule
    cod: MModule
    map: np.ndarray

    def __call__(self, v: int) -> int:
        return int(self.map[v])


@dataclass(frozen=True)
class ActionPropertyReport:
    fa: bool
    fa_witness: Optional[tuple]
    sa: Optional[bool]  # None when the monoid lacks zero or -1 (not applicable)
    sa_witness: Optional[int]


@dataclass(frozen=True)
class Factorization:
    kernel: Submodule
    image: Submodule
    cokernel: MModule
    projection: ModuleMorphism


# --------------------------------------------------------------------------
# construction and validation


def _group_parts(add: np.ndarray) -> tuple[int, np.ndarray]:
    n = add.shape[0]
    ar = np.arange(n)
    zero = int(np.flatnonzero(np.all(add == ar[None, :], axis=1))[0])
    neg = np.argmax(add == zero, axis=1).astype(add.dtype)
    neg.flags.writeable = False
    return zero, neg


def trusted_group(add: np.ndarray) -> FiniteAbelianGroup:
    """Wrap a table that is an abelian group by construction."""
    add = np.ascontiguousarray(add, dtype=index_dtype(add.shape[0]))
    add.flags.writeable = False
    zero, neg = _group_parts(add)
    return FiniteAbelianGroup(add.shape[0], add, zero, neg)


def trusted_module(M: FiniteMonoid, group: FiniteAbelianGroup, act: np.ndarray) -> MModule:
    """Wrap tables that form a module by construction; re-validated when small."""
    if group.order <= CERTIFY_LIMIT:
        from .core import validate_abelian_group

        group = validate_abelian_group(group.order, group.add)
        return validate_module(M, group, act)
    act = np.ascontiguousarray(act, dtype=index_dtype(group.order))
    act.flags.writeable = False
    return MModule(M, group, act)


def validate_module(M: FiniteMonoid, group: FiniteAbelianGroup, act_table) -> MModule:
    """Certify the three module identities and the zero/negation consequences."""
    n, m = group.order, M.order
    act = frozen_table(act_table, m, n, n)
    ar = np.arange(n)
    hit = first_true(act[M.one] != ar)
    if hit is not None:
        raise NotUnital(*hit)
    A = act.astype(np.intp)
    mul = M.mul.astype(np.intp)
    for a in range(m):
        # lhs[b, v] = (ab)·v ; rhs[b, v] = a·(b·v)
        hit = first_true(A[mul[a]] != A[a][A])
        if hit is not None:
            raise NotAction(a, *hit)
    add = group.add.astype(np.intp)
    for a in range(m):
        row = A[a]
        hit = first_true(row[add] != add[row[:, None], row[None, :]])
        if hit is not None:
            raise NotEndomorphism(a, *hit)
    if np.any(A[:, group.zero] != group.zero) or np.any(A[:, group.neg] != group.neg[A]):
        raise TheoremViolation(detail="action fixes 0 and commutes with negation")
    return MModule(M, group, act)


def zero_module(M: FiniteMonoid) -> MModule:
    g = trusted_group(np.zeros((1, 1), dtype=np.int16))
    return validate_module(M, g, np.zeros((M.order, 1), dtype=np.int16))


# --------------------------------------------------------------------------
# closures (bool-array kernels; the public API speaks bitmasks)


def orbit_bool(V: MModule, S: np.ndarray) -> np.ndarray:
    out = np.zeros(V.order, dtype=bool)
    idx = np.flatnonzero(S)
    if idx.size:
        out[V.act[:, idx].ravel()] = True
    return out


def closure_bool(V: MModule, gens: np.ndarray, start: Optional[np.ndarray] = None) -> np.ndarray:
    """Subgroup generated by ``start`` (assumed a subgroup) and ``gens``."""
    g = V.group
    if start is None:
        H = np.zeros(g.order, dtype=bool)
        H[g.zero] = True
    else:
        H = start.copy()
    for x in np.flatnonzero(gens):
        if H[x]:
            continue
        step = int(x)
        # H ← H + {0..2^k-1}·x until stable; the add table is symmetric so rows suffice
        while True:
            new = H | H[g.add[g.neg[step]]]
            if np.array_equal(new, H):
                break
            H = new
            step = int(g.add[step, step])
    return H


def span_bool(V: MModule, S: np.ndarray, start: Optional[np.ndarray] = None) -> np.ndarray:
    """Smallest submodule containing ``S`` (and the submodule ``start``)."""
    return closure_bool(V, orbit_bool(V, S), start)


def cyclic_bool(V: MModule, v: int) -> np.ndarray:
    gens = np.zeros(V.order, dtype=bool)
    gens[V.act[:, v]] = True
    return closure_bool(V, gens)


def orbit(V: MModule, S: SubsetLike) -> int:
    return from_bool(orbit_bool(V, to_bool(as_mask(S), V.order)))


def group_closure(V: MModule, S: SubsetLike) -> int:
    return from_bool(closure_bool(V, to_bool(as_mask(S), V.order)))


def generated_submodule(V: MModule, S: SubsetLike) -> Submodule:
    mask = from_bool(span_bool(V, to_bool(as_mask(S), V.order)))
    sub = submodule(mask)
    _require_submodule(V, mask)
    return sub


def _submodule_witness(V: MModule, mask: int) -> Optional[int]:
    W = to_bool(mask, V.order)
    if not W[V.zero]:
        return V.zero
    idx = np.flatnonzero(W)
    sums = V.group.add[np.ix_(idx, idx)]
    bad = ~W[sums]
    if bad.any():
        return int(sums[first_true(bad)])
    imgs = V.act[:, idx]
    bad = ~W[imgs]
    if bad.any():
        return int(imgs[first_true(bad)])
    return None


def is_submodule(V: MModule, mask: int) -> bool:
    return _submodule_witness(V, mask) is None


def _require_submodule(V: MModule, mask: int) -> None:
    w = _submodule_witness(V, mask)
    if w is not None:
        raise NotSubmodule(w)


def enumerate_submodules(V: MModule, bound: int = SUBMODULE_BOUND) -> list[Submodule]:
    """All submodules, sorted by (size, bitmask).

    Grows submodules one generator at a time from {0}; every submodule is
    reached because it is generated by its own elements.
    """
    if V.order > bound:
        raise BoundExceeded(V.order, detail=f"bound is {bound}")
    n = V.order
    start = np.zeros(n, dtype=bool)
    start[V.zero] = True
    seen = {from_bool(start)}
    frontier = [start]
    while frontier:
        nxt = []
        for W in frontier:
            for v in np.flatnonzero(~W):
                one = np.zeros(n, dtype=bool)
                one[v] = True
                U = span_bool(V, one, W)
                key = from_bool(U)
                if key not in seen:
                    seen.add(key)
                    nxt.append(U)
        frontier = nxt
    return sorted(submodule(m) for m in seen)


def submodule_as_module(V: MModule, W: Submodule) -> tuple[MModule, ModuleMorphism]:
    """The submodule with its induced structure, relabelled 0..|W|-1, plus its inclusion."""
    _require_submodule(V, W.carrier)
    idx = np.array(W.elements(), dtype=np.intp)
    pos = np.full(V.order, -1, dtype=np.intp)
    pos[idx] = np.arange(idx.size)
    add = pos[V.group.add[np.ix_(idx, idx)]]
    act = pos[V.act[:, idx]]
    S = trusted_module(V.monoid, trusted_group(add), act)
    return S, _certified_morphism(S, V, idx)


# --------------------------------------------------------------------------
# quotients, products, morphisms


def quotient(V: MModule, W: Submodule) -> tuple[MModule, ModuleMorphism]:
    """V/W with cosets represented by their least element index."""
    _require_submodule(V, W.carrier)
    widx = np.array(W.elements(), dtype=np.intp)
    rep = V.group.add[:, widx].min(axis=1)
    reps = np.unique(rep)
    pos = np.full(V.order, -1, dtype=np.intp)
    pos[reps] = np.arange(reps.size)
    proj = pos[rep]
    add = proj[V.group.add[np.ix_(reps, reps)]]
    act = proj[V.act[:, reps]]
    Q = trusted_module(V.monoid, trusted_group(add), act)
    if Q.order * W.size != V.order:
        raise TheoremViolation(detail="|V/W|·|W| != |V|")
    return Q, _certified_morphism(V, Q, proj)


def product(Vs: Sequence[MModule], monoid: Optional[FiniteMonoid] = None) -> MModule:
    """Componentwise product; mixed-radix order with the leftmost factor most significant."""
    if not Vs:
        if monoid is None:
            raise MixedMonoids(detail="empty product needs an explicit monoid")
        return zero_module(monoid)
    M = Vs[0].monoid if monoid is None else monoid
    for V in Vs:
        if V.monoid != M:
            raise MixedMonoids()
    acc = Vs[0]
    for V in Vs[1:]:
        acc = _pair_product(acc, V)
    return acc


def _pair_product(A: MModule, B: MModule) -> MModule:
    na, nb = A.order, B.order
    n = na * nb
    dt = index_dtype(n)
    ga = A.group.add.astype(np.int64)
    gb = B.group.add.astype(np.int64)
    add = np.empty((n, n), dtype=dt)
    lo = np.tile(np.arange(nb), na)
    hi = np.repeat(np.arange(na), nb)
    blo = gb[:, lo]
    for i in range(na):
        # rows x = (i, j): add[x, (k, l)] = (i+k, j+l)
        add[i * nb:(i + 1) * nb] = (ga[i, hi][None, :] * nb + blo).astype(dt)
    act = (A.act.astype(np.int64)[:, hi] * nb + B.act.astype(np.int64)[:, lo]).astype(dt)
    return trusted_module(A.monoid, trusted_group(add), act)


def projections(Vs: Sequence[MModule], P: MModule) -> list[ModuleMorphism]:
    sizes = [V.order for V in Vs]
    out = []
    idx = np.arange(P.order)
    for k, V in enumerate(Vs):
        stride = int(np.prod(sizes[k + 1:], dtype=np.int64))
        out.append(_certified_morphism(P, V, (idx // stride) % sizes[k]))
    return out


def _morphism_witness(dom: MModule, cod: MModule, f: np.ndarray):
    f = f.astype(np.intp)
    fa = f[dom.group.add]
    rhs = cod.group.add[f[:, None], f[None, :]]
    hit = first_true(fa != rhs)
    if hit is not None:
        return NotAdditive(*hit)
    hit = first_true(f[dom.act] != cod.act[:, f])
    if hit is not None:
        return NotEquivariant(*hit)
    return None


def morphism(dom: MModule, cod: MModule, map_table) -> ModuleMorphism:
    if dom.monoid != cod.monoid:
        raise MixedMonoids()
    f = frozen_table(np.asarray(map_table).reshape(1, -1), 1, dom.order, cod.order)[0]
    err = _morphism_witness(dom, cod, f)
    if err is not None:
        raise err
    return ModuleMorphism(dom, cod, f)


def _certified_morphism(dom: MModule, cod: MModule, f) -> ModuleMorphism:
    f = np.asarray(f)
    if dom.order <= 4 * CERTIFY_LIMIT:
        return morphism(dom, cod, f)
    f = f.astype(index_dtype(cod.order))
    f.flags.writeable = False
    return ModuleMorphism(dom, cod, f)


def identity_morphism(V: MModule) -> ModuleMorphism:
    return morphism(V, V, np.arange(V.order))


def zero_morphism(dom: MModule, cod: MModule) -> ModuleMorphism:
    return morphism(dom, cod, np.full(dom.order, cod.zero))


def factorize(f: ModuleMorphism) -> Factorization:
    dom, cod = f.dom, f.cod
    ker = to_bool(0, dom.order)
    ker[f.map == cod.zero] = True
    img = np.zeros(cod.order, dtype=bool)
    img[f.map] = True
    kernel = submodule(from_bool(ker))
    image = submodule(from_bool(img))
    _require_submodule(dom, kernel.carrier)
    _require_submodule(cod, image.carrier)
    if dom.order != kernel.size * image.size:
        raise TheoremViolation(detail="|dom| != |ker|·|im|")
    coker, proj = quotient(cod, image)
    return Factorization(kernel, image, coker, proj)


def extend_morphism(dom: MModule, cod: MModule, assignment: dict[int, int]) -> Optional[np.ndarray]:
    """Extend ``gen -> image`` to a morphism on the submodule the gens span.

    Returns the partial map (``-1`` outside the span) or ``None`` if inconsistent.
    """
    F = np.full(dom.order, -1, dtype=np.intp)
    F[dom.zero] = cod.zero
    for g, c in assignment.items():
        F = _extend_one(dom, cod, F, g, c)
        if F is None:
            return None
    return F


def _extend_one(dom, cod, F, g, c):
    F = F.copy()
    srcs = dom.act[:, g].astype(np.intp)
    vals = cod.act[:, c].astype(np.intp)
    for s, t in zip(srcs, vals):
        if F[s] >= 0 and F[s] != t:
            return None
    known_src = {}
    for s, t in zip(srcs, vals):
        if known_src.setdefault(int(s), int(t)) != t:
            return None
    gens = sorted(known_src.items())
    changed = True
    while changed:
        changed = False
        for h, fh in gens:
            while True:
                idx = np.flatnonzero(F >= 0)
                tgt = dom.group.add[idx, h].astype(np.intp)
                val = cod.group.add[F[idx], fh].astype(np.intp)
                known = F[tgt] >= 0
                if np.any(F[tgt[known]] != val[known]):
                    return None
                new = ~known
                if not new.any():
                    break
                # duplicates among new targets must agree
                t_new, v_new = tgt[new], val[new]
                F[t_new] = v_new
                if np.any(F[t_new] != v_new):
                    return None
                changed = True
    return F


def module_generators(V: MModule) -> list[int]:
    gens = []
    W = np.zeros(V.order, dtype=bool)
    W[V.zero] = True
    for v in range(V.order):
        if not W[v]:
            gens.append(v)
            one = np.zeros(V.order, dtype=bool)
            one[v] = True
            W = span_bool(V, one, W)
    return gens


def iter_morphisms(dom: MModule, cod: MModule, rng: Optional[random.Random] = None) -> Iterator[ModuleMorphism]:
    """All morphisms dom -> cod, by backtracking over images of module generators.

    With ``rng`` the candidate images are tried in shuffled order.
    """
    if dom.monoid != cod.monoid:
        raise MixedMonoids()
    gens = module_generators(dom)
    base = np.full(dom.order, -1, dtype=np.intp)
    base[dom.zero] = cod.zero

    def rec(k, F):
        if k == len(gens):
            yield morphism(dom, cod, F)
            return
        cands = list(range(cod.order))
        if rng is not None:
            rng.shuffle(cands)
        for c in cands:
            G = _extend_one(dom, cod, F, gens[k], c)
            if G is not None:
                yield from rec(k + 1, G)

    yield from rec(0, base)


def random_morphism(dom: MModule, cod: MModule, rng: random.Random) -> ModuleMorphism:
    return next(iter_morphisms(dom, cod, rng))


# --------------------------------------------------------------------------
# action predicates


def check_action_properties(V: MModule) -> ActionPropertyReport:
    """(FA) and (SA) by exhaustive scan; FA witnesses are (α, β, v), scanned v-major."""
    fa_w = None
    A = V.act
    iu = np.triu_indices(V.monoid.order, 1)
    for v in range(V.order):
        if v == V.zero:
            continue
        col = A[:, v]
        eq = (col[:, None] == col[None, :])[iu]
        if eq.any():
            k = int(np.flatnonzero(eq)[0])
            fa_w = (int(iu[0][k]), int(iu[1][k]), v)
            break
    M = V.monoid
    if M.zero is None or M.minus_one is None:
        sa, sa_w = None, None
    else:
        bad = (A[M.zero] != V.zero) | (A[M.minus_one] != V.group.neg)
        hit = np.flatnonzero(bad)
        sa = hit.size == 0
        sa_w = None if sa else int(hit[0])
    return ActionPropertyReport(fa_w is None, fa_w, sa, sa_w)
