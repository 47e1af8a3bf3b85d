"""Multi-near-rings, quasi-kernels, André modules and near-vector spaces.

The André decision uses the largest set Q* satisfying (QK1): (QK1) is an
elementwise condition and the (QK2) right-hand side is monotone in Q, so
some Q works iff Q* does.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .core import FiniteAbelianGroup, FiniteMonoid, ScalarGroupReport, check_scalar_group, validate_monoid
from .errors import (
    AlgebraError,
    BadShape,
    EmptySelection,
    HypothesisFailed,
    NoPresentation,
    NotSingleRing,
    PreconditionFailed,
    TheoremViolation,
    TrivialModule,
)
from .modules import (
    ActionPropertyReport,
    MModule,
    check_action_properties,
    closure_bool,
    cyclic_bool,
    enumerate_submodules,
    orbit_bool,
    product,
    span_bool,
    submodule_as_module,
    validate_module,
)
from .nearrings import NearRing, classify, validate_nearring
from .subsets import SubsetLike, as_mask, from_bool, members, to_bool

_CHUNK = 1 << 20  # max elements of a temporary (alpha, beta, gamma, v) block


@dataclass(frozen=True, eq=False)
class MultiNearRing:
    monoid: FiniteMonoid
    designated: tuple

    def __len__(self):
        return len(self.designated)


def validate_multinearring(M: FiniteMonoid, add_tables: Sequence) -> MultiNearRing:
    rings = []
    for t in add_tables:
        N = t if isinstance(t, NearRing) else validate_nearring(M, t)
        if N.monoid != M:
            raise BadShape(detail="designated near-ring over a different monoid")
        rings.append(N)
    for i in range(len(rings)):
        for j in range(i):
            if rings[i].group == rings[j].group:
                raise BadShape(j, i, detail="designated additions must be distinct")
    return MultiNearRing(M, tuple(rings))


@dataclass(frozen=True)
class QuasiKernelReport:
    qv: int
    gamma_witness: dict = field(repr=False)  # v -> (|M|, |M|) array of γ with α·v + β·v = γ·v


@dataclass(frozen=True)
class AndreReport:
    is_andre: bool
    qstar: int
    nearring_witness: dict
    qk2_failure: Optional[int] = None


@dataclass(frozen=True)
class NvsReport:
    is_nvs: bool
    scalar_group: ScalarGroupReport
    action: ActionPropertyReport
    qv_generates: bool
    failure: Optional[tuple] = None


@dataclass(frozen=True)
class EndoSetReport:
    fstar: tuple
    conditions: dict
    element_map: tuple  # α -> index of λ_α in fstar
    element_map_injective: bool
    element_map_multiplicative: bool


@dataclass(frozen=True)
class TrailStep:
    q1: int
    q2: int
    alpha: int
    beta: int
    beta_prime: int
    v_prime: int
    v_second: int


@dataclass(frozen=True)
class DecompositionCertificate:
    target: int
    parts: tuple
    m_v: int
    trail: tuple


@dataclass(frozen=True)
class TfaeReport:
    every_submodule_generated: bool
    qk2_for_qv: bool
    qk2_prime: bool
    closure_identity: bool
    submodules: int
    elements: int


# --------------------------------------------------------------------------
# quasi-kernel and (QK1)


def _chunks(n, per):
    step = max(1, _CHUNK // max(per, 1))
    for lo in range(0, n, step):
        yield lo, min(n, lo + step)


def quasi_kernel(V: MModule) -> QuasiKernelReport:
    """Q(V) = {v : ∀α,β ∃γ  α·v + β·v = γ·v}, with the least γ recorded."""
    A = V.act.astype(np.intp)
    add = V.group.add
    m, n = A.shape
    inq = np.zeros(n, dtype=bool)
    gamma = {}
    for lo, hi in _chunks(n, m ** 3):
        a = A[:, lo:hi]
        sums = add[a[:, None, :], a[None, :, :]]  # (α, β, v)
        hits = sums[:, :, None, :] == a[None, None, :, :]  # (α, β, γ, v)
        ok = hits.any(axis=2).all(axis=(0, 1))
        inq[lo:hi] = ok
        first = hits.argmax(axis=2)
        for k in np.flatnonzero(ok):
            g = first[:, :, k].copy()
            g.flags.writeable = False
            gamma[lo + int(k)] = g
    return QuasiKernelReport(from_bool(inq), gamma)


def qk1_table(V: MModule, R: MultiNearRing) -> np.ndarray:
    """ok[i, v] iff (α +_i β)·v = α·v + β·v for all α, β."""
    A = V.act.astype(np.intp)
    add = V.group.add
    m, n = A.shape
    out = np.zeros((len(R.designated), n), dtype=bool)
    for lo, hi in _chunks(n, m * m):
        a = A[:, lo:hi]
        rhs = add[a[:, None, :], a[None, :, :]]
        for i, N in enumerate(R.designated):
            lhs = a[N.add.astype(np.intp)]
            out[i, lo:hi] = (lhs == rhs).all(axis=(0, 1))
    return out


def max_qk1_set(V: MModule, R: MultiNearRing) -> tuple[int, dict]:
    """Q* = {0} ∪ {v ≠ 0 satisfying (QK1) for some designated near-ring}; lowest index wins."""
    if R.monoid != V.monoid:
        raise BadShape(detail="module and multi-near-ring over different monoids")
    ok = qk1_table(V, R)
    q = ok.any(axis=0) if ok.shape[0] else np.zeros(V.order, dtype=bool)
    q[V.zero] = True
    witness = {}
    for v in np.flatnonzero(q):
        if v != V.zero:
            witness[int(v)] = int(np.argmax(ok[:, v]))
    return from_bool(q), witness


# --------------------------------------------------------------------------
# (QK2), (QK3)


class _Cyclic:
    """Cache of cyclic submodules closure(M·{v}); shared along unit orbits."""

    def __init__(self, V: MModule):
        self.V = V
        self.cache: list = [None] * V.order
        self.units = V.monoid.units

    def __call__(self, v: int) -> np.ndarray:
        W = self.cache[v]
        if W is None:
            W = cyclic_bool(self.V, v)
            W.flags.writeable = False
            for u in self.units:
                self.cache[int(self.V.act[u, v])] = W
        return W


def _qk2_scan(V: MModule, Qb: np.ndarray, cyc: Optional[_Cyclic] = None) -> Optional[int]:
    cyc = cyc or _Cyclic(V)
    spans: dict = {}
    for v in range(V.order):
        W = cyc(v)
        key = W.tobytes()
        C = spans.get(key)
        if C is None:
            C = span_bool(V, W & Qb)
            spans[key] = C
        if not C[v]:
            return v
    return None


def check_qk2(V: MModule, Q: SubsetLike) -> tuple[bool, Optional[int]]:
    """Does every v lie in closure(M·(closure(M·{v}) ∩ Q))? Returns the first failure."""
    bad = _qk2_scan(V, to_bool(as_mask(Q), V.order))
    return bad is None, bad


def check_andre(V: MModule, R: MultiNearRing) -> AndreReport:
    qstar, wit = max_qk1_set(V, R)
    ok, bad = check_qk2(V, qstar)
    return AndreReport(ok, qstar, wit, bad)


def check_qk3(V: MModule, Q: SubsetLike, R: Optional[MultiNearRing] = None,
              cyc: Optional[_Cyclic] = None) -> tuple[bool, Optional[tuple]]:
    """(QK3) by exhaustive scan; witness (v, q, α, r) of the first unsatisfiable tuple.

    ``α ≠ 0`` refers to the monoid's absorbing element; without one every α is scanned.
    """
    M = V.monoid if R is None else R.monoid
    Qb = to_bool(as_mask(Q), V.order)
    qidx = np.flatnonzero(Qb)
    alphas = [a for a in range(M.order) if a != M.zero]
    A = V.act.astype(np.intp)
    add = V.group.add.astype(np.intp)
    neg = V.group.neg.astype(np.intp)
    cyc = cyc or _Cyclic(V)
    verdict: dict = {}
    for v in range(V.order):
        if Qb[v]:
            continue
        W = cyc(v)
        key = W.tobytes()
        if key not in verdict:
            verdict[key] = _qk3_for(W, qidx, alphas, A, add, neg)
        hit = verdict[key]
        if hit is not None:
            return False, (v, *hit)
    return True, None


def _qk3_for(W, qidx, alphas, A, add, neg):
    widx = np.flatnonzero(W)
    for q in qidx:
        for a in alphas:
            rs = add[widx, neg[A[a, q]]]  # all r with a·q + r ∈ W
            ok = W[add[q, A[:, rs]]].any(axis=0)
            if not ok.all():
                return int(q), a, int(rs[np.argmin(ok)])
    return None


# --------------------------------------------------------------------------
# near-vector spaces


def check_nvs(V: MModule) -> NvsReport:
    sg = check_scalar_group(V.monoid)
    props = check_action_properties(V)
    qv = quasi_kernel(V).qv
    gen = bool(closure_bool(V, to_bool(qv, V.order)).all())
    failure = None
    if not sg.is_scalar_group:
        failure = ("monoid-not-scalar-group", sg.failure_witness)
    elif not props.fa:
        failure = ("fa", props.fa_witness)
    elif not props.sa:
        failure = ("sa", props.sa_witness)
    elif not gen:
        failure = ("qv-not-generating", None)
    return NvsReport(failure is None, sg, props, gen, failure)


def _quasi_kernel_of_functions(group: FiniteAbelianGroup, F: np.ndarray) -> np.ndarray:
    add = group.add
    k, n = F.shape
    sums = add[F[:, None, :], F[None, :, :]]
    return (sums[:, :, None, :] == F[None, None, :, :]).any(axis=2).all(axis=(0, 1))


def nvs_to_endoset(V: MModule) -> EndoSetReport:
    """The endofunctions λ_α : v ↦ α·v and the five endomorphism-set conditions."""
    if V.order == 1:
        raise TrivialModule()
    rep = check_nvs(V)
    if not rep.is_nvs:
        raise PreconditionFailed(detail=f"not a near-vector space: {rep.failure}")
    g = V.group
    n = V.order
    rows = {}
    element_map = []
    for a in range(V.monoid.order):
        key = tuple(int(x) for x in V.act[a])
        element_map.append(rows.setdefault(key, len(rows)))
    fstar = tuple(rows)
    F = np.array(fstar, dtype=np.intp)
    zero_f = tuple([g.zero] * n)
    ident = tuple(range(n))
    negf = tuple(int(x) for x in g.neg)
    c2 = zero_f in rows and ident in rows and negf in rows
    fset = set(fstar)
    comp_closed = all(tuple(int(x) for x in F[i][F[j]]) in fset
                      for i in range(len(F)) for j in range(len(F)))
    nonzero = [f for f in fstar if f != zero_f]
    add = g.add.astype(np.intp)
    c3 = bool(nonzero) and ident in nonzero and comp_closed
    for f in nonzero:
        fa = np.array(f)
        if len(set(f)) != n or not np.array_equal(fa[add], add[fa[:, None], fa[None, :]]):
            c3 = False
            break
    if c3:
        inv_ok = all(tuple(int(x) for x in np.argsort(np.array(f))) in fset for f in nonzero)
        c3 = inv_ok
    c4 = True
    for x in range(n):
        if x != g.zero and len({f[x] for f in fstar}) != len(fstar):
            c4 = False
            break
    c5 = bool(closure_bool(V, _quasi_kernel_of_functions(g, F)).all())
    injective = len(fstar) == V.monoid.order
    mul = V.monoid.mul
    multiplicative = all(fstar[element_map[int(mul[a, b])]] ==
                         tuple(int(x) for x in F[element_map[a]][F[element_map[b]]])
                         for a in range(V.monoid.order) for b in range(V.monoid.order))
    conditions = {2: c2, 3: c3, 4: c4, 5: c5, "closed_under_composition": comp_closed}
    return EndoSetReport(fstar, conditions, tuple(element_map), injective, multiplicative)


def endoset_to_module(group: FiniteAbelianGroup, functions: Sequence[Sequence[int]]) -> MModule:
    """A set of endomorphisms closed under composition, as a module over its composition monoid."""
    F = [tuple(int(x) for x in f) for f in functions]
    index = {f: i for i, f in enumerate(F)}
    if len(index) != len(F):
        raise BadShape(detail="duplicate endofunctions")
    k = len(F)
    mul = np.empty((k, k), dtype=np.int64)
    for i, f in enumerate(F):
        for j, h in enumerate(F):
            comp = tuple(f[x] for x in h)  # (f∘h)(x) = f(h(x))
            if comp not in index:
                raise BadShape(i, j, detail="not closed under composition")
            mul[i, j] = index[comp]
    M = validate_monoid(k, None, mul)
    return validate_module(M, group, np.array(F))


# --------------------------------------------------------------------------
# products of designated near-rings, single-ring modules


def product_of_designated(R: MultiNearRing, L: Sequence[int]) -> tuple[MModule, int]:
    """Π_{i∈L} designated[i] as an M-module, with Q = {e_i} (Kronecker delta vectors)."""
    if not L:
        raise EmptySelection()
    factors = [R.designated[i].module for i in L]
    P = product(factors)
    sizes = [f.order for f in factors]
    Q = []
    for k in range(len(L)):
        coords = [f.zero for f in factors]
        coords[k] = R.designated[L[k]].one
        idx = 0
        for c, s in zip(coords, sizes):
            idx = idx * s + c
        Q.append(idx)
    qmask = sum(1 << q for q in set(Q))
    ok = qk1_table(P, R)
    for k, q in enumerate(Q):
        if q != P.zero and not ok[L[k], q]:
            raise TheoremViolation(q, detail="e_N fails (QK1) for its own near-ring")
    return P, qmask


def distributivity_witness(V: MModule, N: NearRing) -> Optional[tuple]:
    """First (α, β, v) with (α +_N β)·v != α·v + β·v."""
    A = V.act.astype(np.intp)
    lhs = A[N.add.astype(np.intp)]  # (α, β, v)
    rhs = V.group.add[A[:, None, :], A[None, :, :]]
    bad = np.argwhere(lhs != rhs)
    return tuple(int(x) for x in bad[0]) if bad.size else None


def check_ring_module_equiv(V: MModule, R: MultiNearRing, require_ring: bool = True) -> bool:
    """André over (M, {N}) versus module over the ring N in the usual sense.

    For a ring the two must agree (TheoremViolation otherwise); for a proper
    near-ring (``require_ring=False``) the André verdict is returned unasserted.
    """
    if len(R.designated) != 1:
        raise NotSingleRing(detail=f"{len(R.designated)} designated near-rings")
    N = R.designated[0]
    is_ring = classify(N).is_ring
    if require_ring and not is_ring:
        raise NotSingleRing(detail="designated near-ring is not a ring")
    andre = check_andre(V, R).is_andre
    direct = distributivity_witness(V, N) is None
    if is_ring and andre != direct:
        raise TheoremViolation(detail=f"andre={andre} but ring-module={direct}")
    return andre


# --------------------------------------------------------------------------
# constructive decomposition over the quasi-kernel


def quasikernel_layers(V: MModule, Q: SubsetLike) -> tuple[np.ndarray, np.ndarray]:
    """BFS over sums of nonzero elements of Q: dist[v] = m_v (-1 if unreachable), parent[v] = (u, q)."""
    n = V.order
    dist = np.full(n, -1, dtype=np.int64)
    parent = np.full((n, 2), -1, dtype=np.int64)
    dist[V.zero] = 0
    frontier = np.array([V.zero])
    qs = np.array([q for q in members(as_mask(Q)) if q != V.zero], dtype=np.intp)
    k = 0
    while frontier.size and qs.size and k < n:
        k += 1
        sums = V.group.add[np.ix_(frontier, qs)].ravel()
        fresh = dist[sums] < 0
        vals, first = np.unique(sums[fresh], return_index=True)
        src = np.flatnonzero(fresh)[first]
        dist[vals] = k
        parent[vals, 0] = frontier[src // qs.size]
        parent[vals, 1] = qs[src % qs.size]
        frontier = vals
    return dist, parent


def min_presentation_length(V: MModule, v: int) -> Optional[int]:
    """m_v: fewest elements of Q(V) summing to v (None if v is not in the subgroup they generate)."""
    d = int(quasikernel_layers(V, quasi_kernel(V).qv)[0][v])
    return None if d < 0 else d


class Decomposer:
    """Decomposes elements into quasi-kernel parts inside their cyclic submodule.

    Construction checks the hypotheses: Q(V) satisfies (QK1) against ``R``,
    M·Q(V) = Q(V), Q(V) generates V, and (QK3) holds for Q(V).
    """

    def __init__(self, V: MModule, R: MultiNearRing):
        self.V, self.R = V, R
        n = V.order
        qk = quasi_kernel(V)
        self.qv = qk.qv
        self.Qb = to_bool(qk.qv, n)
        self.qidx = np.flatnonzero(self.Qb)
        ok = qk1_table(V, R)
        self.nq = {}
        for q in self.qidx:
            if q == V.zero:
                continue
            hits = np.flatnonzero(ok[:, q])
            if hits.size == 0:
                raise HypothesisFailed(int(q), detail="qk1")
            self.nq[int(q)] = int(hits[0])
        if not np.array_equal(orbit_bool(V, self.Qb), self.Qb):
            raise HypothesisFailed(detail="orbit")
        self.cyc = _Cyclic(V)
        holds, wit = check_qk3(V, self.qv, R, self.cyc)
        if not holds:
            raise HypothesisFailed(*wit, detail="qk3")
        self.dist, self.parent = quasikernel_layers(V, self.qv)
        if np.any(self.dist < 0):
            raise HypothesisFailed(int(np.argmin(self.dist)), detail="generates")

    def presentation(self, v: int) -> list[int]:
        out = []
        while v != self.V.zero:
            x, q = self.parent[v]
            out.append(int(q))
            v = int(x)
        return sorted(out)

    def decompose(self, v: int) -> DecompositionCertificate:
        if self.dist[v] < 0:
            raise NoPresentation(v)
        trail: list = []
        parts = self._rec(int(v), trail)
        return DecompositionCertificate(int(v), tuple(parts), int(self.dist[v]), tuple(trail))

    def _rec(self, v, trail):
        m = int(self.dist[v])
        if m == 0:
            return []
        if m == 1:
            return [v]
        V, R = self.V, self.R
        A = V.act.astype(np.intp)
        gadd = V.group.add
        qs = self.presentation(v)
        choice = None
        for i in range(len(qs)):
            for j in range(i + 1, len(qs)):
                N1, N2 = R.designated[self.nq[qs[i]]], R.designated[self.nq[qs[j]]]
                diff = np.argwhere(N1.add != N2.add)
                if diff.size:
                    choice = (i, j, int(diff[0][0]), int(diff[0][1]))
                    break
            if choice:
                break
        if choice is None:
            raise TheoremViolation(v, detail="minimal presentation with a common addition")
        i, j, a, b = choice
        q1, q2 = qs[i], qs[j]
        rest = [q for k, q in enumerate(qs) if k not in (i, j)]
        s1 = int(R.designated[self.nq[q1]].add[a, b])

        def coeff(q):
            N = R.designated[self.nq[q]]
            return int(N.add[N.add[a, b], N.group.neg[s1]])

        c2 = coeff(q2)
        r = V.zero
        for q in rest:
            r = int(gadd[r, A[coeff(q), q]])
        W = self.cyc(v)
        if not W[gadd[A[c2, q2], r]]:
            raise TheoremViolation(v, detail="α·q + r outside the cyclic submodule")
        cands = np.flatnonzero(W[gadd[q2, A[:, r]]])
        if cands.size == 0:
            raise HypothesisFailed(v, q2, c2, r, detail="qk3")
        bp = int(cands[0])
        v2 = int(gadd[q2, A[bp, r]])
        v1 = int(gadd[v, V.group.neg[v2]])
        if self.dist[v1] >= m or self.dist[v2] >= m:
            raise TheoremViolation(v, detail="induction measure did not drop")
        trail.append(TrailStep(q1, q2, a, b, bp, v1, v2))
        return self._rec(v1, trail) + self._rec(v2, trail)


def decompose_quasikernel(V: MModule, v: int, R: MultiNearRing) -> DecompositionCertificate:
    return Decomposer(V, R).decompose(v)


def validate_certificate(V: MModule, cert: DecompositionCertificate, qv: int) -> bool:
    """Re-check a certificate without its trail: parts in closure(M·{v}) ∩ Q(V), summing to v."""
    W = cyclic_bool(V, cert.target)
    Qb = to_bool(qv, V.order)
    total = V.zero
    for p in cert.parts:
        if not (W[p] and Qb[p]):
            return False
        total = int(V.group.add[total, p])
    return total == cert.target and len(cert.parts) >= cert.m_v


# --------------------------------------------------------------------------
# subspace-hypothesis equivalences


def check_tfae(V: MModule) -> TfaeReport:
    rep = check_nvs(V)
    if not rep.is_nvs:
        raise PreconditionFailed(detail=f"not a near-vector space: {rep.failure}")
    n = V.order
    Qb = to_bool(quasi_kernel(V).qv, n)
    subs = enumerate_submodules(V)
    cond1 = True
    for W in subs:
        S, incl = submodule_as_module(V, W)
        qw = to_bool(quasi_kernel(S).qv, S.order)
        back = np.zeros(n, dtype=bool)
        back[incl.map[qw]] = True
        Wb = to_bool(W.carrier, n)
        if not np.array_equal(back, Wb & Qb):
            raise TheoremViolation(W.carrier, detail="Q(W) != W ∩ Q(V)")
        if not closure_bool(S, qw).all():
            cond1 = False
    cyc = _Cyclic(V)
    cond2 = cond3 = thm_aa = True
    for v in range(n):
        Sv = cyc(v) & Qb
        plain = closure_bool(V, Sv)
        spanned = span_bool(V, Sv)
        thm_aa &= bool(np.array_equal(plain, spanned))
        cond2 &= bool(spanned[v])
        cond3 &= bool(plain[v])
    if not thm_aa:
        raise TheoremViolation(detail="closure(W_v ∩ Q) != closure(M·(W_v ∩ Q))")
    if not (cond1 and cond2 and cond3):
        raise TheoremViolation(detail=f"conditions (1,2,3) = {(cond1, cond2, cond3)}")
    return TfaeReport(cond1, cond2, cond3, thm_aa, len(subs), n)
