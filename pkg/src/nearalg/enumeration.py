"""Exhaustive search for all near-ring additions on a fixed finite monoid."""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

import numpy as np

from .core import FiniteMonoid, validate_monoid
from .errors import AlgebraError, BoundExceeded, TheoremViolation
from .nearrings import NearRing, validate_nearring

DEFAULT_BOUND = 12
ORACLE_BOUND = 5

Table = tuple  # tuple of row tuples


@dataclass(frozen=True)
class EnumerationTask:
    monoid: FiniteMonoid
    max_results: Optional[int] = None
    dedup_by_automorphism: bool = False
    bound: int = DEFAULT_BOUND
    workers: int = 1


@dataclass(frozen=True)
class EnumerationResult:
    additions: tuple
    complete: bool
    orbits: Optional[tuple] = None

    def __len__(self):
        return len(self.additions)

    @property
    def representatives(self) -> tuple:
        if self.orbits is None:
            return self.additions
        return tuple(self.additions[o[0]] for o in self.orbits)

    def nearrings(self, M: FiniteMonoid) -> list[NearRing]:
        return [validate_nearring(M, t) for t in self.additions]


def as_table(arr) -> Table:
    return tuple(tuple(int(x) for x in row) for row in np.asarray(arr))


def zero_candidates(M: FiniteMonoid) -> list[int]:
    """Elements e with a·e = e for every a: the only possible additive identities."""
    return [e for e in range(M.order) if np.all(M.mul[:, e] == e)]


# --------------------------------------------------------------------------
# constraint-propagating backtracking search


class _State:
    __slots__ = ("n", "T", "pos", "byval")

    def __init__(self, n):
        self.n = n
        self.T = [[-1] * n for _ in range(n)]
        self.pos = [[-1] * n for _ in range(n)]  # pos[x][z] = y iff T[x][y] = z
        self.byval = [[] for _ in range(n)]  # cells holding value z

    def copy(self):
        s = _State.__new__(_State)
        s.n = self.n
        s.T = [r[:] for r in self.T]
        s.pos = [r[:] for r in self.pos]
        s.byval = [r[:] for r in self.byval]
        return s


class _Search:
    def __init__(self, mul):
        self.n = len(mul)
        self.lam = [list(map(int, row)) for row in mul]

    def assign(self, s, queue, x, y, z):
        T = s.T
        cur = T[x][y]
        if cur == z:
            return True
        if cur != -1:
            return False
        for p, q in ((x, y), (y, x)) if x != y else ((x, y),):
            if s.pos[p][z] != -1:
                return False
            T[p][q] = z
            s.pos[p][z] = q
            s.byval[z].append((p, q))
            queue.append((p, q))
        return True

    def propagate(self, s, queue):
        T, n, lam = s.T, self.n, self.lam
        while queue:
            x, y = queue.pop()
            z = T[x][y]
            for la in lam:
                if not self.assign(s, queue, la[x], la[y], la[z]):
                    return False
            Tz, Ty, Tx = T[z], T[y], T[x]
            # (x+y)+c = x+(y+c)
            for c in range(n):
                u = Ty[c]
                if u < 0:
                    continue
                L, R = Tz[c], Tx[u]
                if L >= 0:
                    if R >= 0:
                        if L != R:
                            return False
                    elif not self.assign(s, queue, x, u, L):
                        return False
                elif R >= 0 and not self.assign(s, queue, z, c, R):
                    return False
            # (p+q)+y = p+(q+y) for every cell p+q = x
            for p, q in list(s.byval[x]):
                u = T[q][y]
                if u < 0:
                    continue
                R = T[p][u]
                if R >= 0:
                    if R != z:
                        return False
                elif not self.assign(s, queue, p, u, z):
                    return False
        return True

    def root(self, e):
        s = _State(self.n)
        queue = []
        for x in range(self.n):
            if not self.assign(s, queue, e, x, x):
                return None
        return s if self.propagate(s, queue) else None

    def choose(self, s):
        """Most constrained empty cell (x <= y) with its candidate values, or None if full."""
        n, T, pos = self.n, s.T, s.pos
        best, best_c = None, None
        for x in range(n):
            Tx, px = T[x], pos[x]
            for y in range(x, n):
                if Tx[y] >= 0:
                    continue
                py = pos[y]
                cands = [z for z in range(n) if px[z] == -1 and py[z] == -1]
                if best is None or len(cands) < len(best_c):
                    best, best_c = (x, y), cands
                    if len(cands) <= 1:
                        return best, best_c
        return best, best_c

    def branch(self, s, x, y, z):
        t = s.copy()
        q = []
        if self.assign(t, q, x, y, z) and self.propagate(t, q):
            return t
        return None

    def solve(self, s, limit=None):
        out = []
        stack = [s]
        while stack:
            cur = stack.pop()
            cell, cands = self.choose(cur)
            if cell is None:
                out.append(tuple(tuple(r) for r in cur.T))
                if limit is not None and len(out) >= limit:
                    break
                continue
            for z in reversed(cands):
                t = self.branch(cur, cell[0], cell[1], z)
                if t is not None:
                    stack.append(t)
        return out


def _top_branches(search, M):
    """Partition of the search space: (zero, first cell, value) triples in canonical order."""
    out = []
    for e in zero_candidates(M):
        s = search.root(e)
        if s is None:
            continue
        cell, cands = search.choose(s)
        if cell is None:
            out.append((e, None, None))
            continue
        for z in cands:
            out.append((e, cell, z))
    return out


def _run_branch(args):
    mul, e, cell, z, limit = args
    search = _Search(mul)
    s = search.root(e)
    if cell is not None:
        s = search.branch(s, cell[0], cell[1], z)
    if s is None:
        return []
    return search.solve(s, limit)


def enumerate_nearrings(task: EnumerationTask) -> EnumerationResult:
    """Every addition table making the task's monoid a near-ring, sorted lexicographically."""
    M = task.monoid
    if M.order > task.bound:
        raise BoundExceeded(M.order, detail=f"bound is {task.bound}")
    mul = [list(map(int, r)) for r in M.mul]
    search = _Search(mul)
    cap = None if task.max_results is None else task.max_results + 1
    jobs = [(mul, e, cell, z, cap) for e, cell, z in _top_branches(search, M)]
    if task.workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(task.workers) as pool:
            chunks = list(pool.map(_run_branch, jobs))
    else:
        chunks = []
        for job in jobs:
            chunks.append(_run_branch(job))
            if cap is not None and sum(map(len, chunks)) >= cap:
                break
    found = [t for chunk in chunks for t in chunk]
    complete = True
    if task.max_results is not None and len(found) > task.max_results:
        complete = False
        found = found[:task.max_results]
    for t in found:
        try:
            validate_nearring(M, t)
        except AlgebraError as exc:
            raise TheoremViolation(detail=f"search emitted an invalid table: {exc}") from exc
    additions = tuple(sorted(set(found)))
    res = EnumerationResult(additions, complete)
    if task.dedup_by_automorphism:
        res = dedup_by_automorphism(res, M)
    return res


# --------------------------------------------------------------------------
# independent oracle


@lru_cache(maxsize=None)
def _perms(n):
    return tuple(itertools.permutations(range(n)))


def oracle_enumerate_nearrings(M: FiniteMonoid) -> EnumerationResult:
    """Filter all binary operations row by row (rows of a group table are permutations)."""
    n = M.order
    if n > ORACLE_BOUND:
        raise BoundExceeded(n, detail=f"oracle bound is {ORACLE_BOUND}")
    mul = [list(map(int, r)) for r in M.mul]
    rows: list = []
    out = []

    def ok(t):
        ident = [e for e in range(n) if all(t[e][x] == x for x in range(n))]
        if not ident:
            return False
        for a in range(n):
            for b in range(n):
                for c in range(n):
                    if t[t[a][b]][c] != t[a][t[b][c]]:
                        return False
                    if mul[a][t[b][c]] != t[mul[a][b]][mul[a][c]]:
                        return False
        return True

    def rec(i):
        if i == n:
            if ok(rows):
                out.append(tuple(rows))
            return
        for p in _perms(n):
            if any(p[j] != rows[j][i] for j in range(i)):
                continue
            if any(p[j] == rows[k][j] for k in range(i) for j in range(n)):
                continue
            rows.append(p)
            rec(i + 1)
            rows.pop()

    rec(0)
    return EnumerationResult(tuple(sorted(out)), True)


# --------------------------------------------------------------------------
# automorphisms and orbit deduplication


def _signature(M: FiniteMonoid, a: int) -> tuple:
    mul = M.mul
    seen = {}
    x, k = a, 1
    while x not in seen:
        seen[x] = k
        x = int(mul[x, a])
        k += 1
    index, period = seen[x], k - seen[x]
    return (
        a == M.one,
        a == M.zero,
        index,
        period,
        int(np.sum(mul[a] == a)),
        int(np.sum(mul[:, a] == a)),
        int(np.sum(np.diagonal(mul) == a)),
        int(np.sum(mul[a] == M.one)),
    )


def monoid_automorphisms(M: FiniteMonoid) -> list[tuple]:
    """All multiplicative automorphisms, as permutation tuples, in lexicographic order."""
    n = M.order
    mul = [list(map(int, r)) for r in M.mul]
    sig = [_signature(M, a) for a in range(n)]
    cands = [[b for b in range(n) if sig[b] == sig[a]] for a in range(n)]
    out = []

    def force(phi, used, a, b, queue):
        if phi[a] == -1:
            if used[b] or sig[a] != sig[b]:
                return False
            phi[a] = b
            used[b] = True
            queue.append(a)
            return True
        return phi[a] == b

    def propagate(phi, used, queue):
        while queue:
            a = queue.pop()
            for x in range(n):
                if phi[x] < 0:
                    continue
                for p, q in ((a, x), (x, a)):
                    if not force(phi, used, mul[p][q], mul[phi[p]][phi[q]], queue):
                        return False
        return True

    def rec(phi, used):
        try:
            a = phi.index(-1)
        except ValueError:
            out.append(tuple(phi))
            return
        for b in cands[a]:
            if used[b]:
                continue
            p2, u2 = phi[:], used[:]
            q = []
            if force(p2, u2, a, b, q) and propagate(p2, u2, q):
                rec(p2, u2)

    phi = [-1] * n
    used = [False] * n
    q = []
    if force(phi, used, M.one, M.one, q) and propagate(phi, used, q):
        rec(phi, used)
    return sorted(out)


def transport_table(t: Table, phi) -> Table:
    n = len(phi)
    inv = [0] * n
    for a, b in enumerate(phi):
        inv[b] = a
    return tuple(tuple(inv[t[phi[a]][phi[b]]] for b in range(n)) for a in range(n))


def dedup_by_automorphism(result: EnumerationResult, M: FiniteMonoid) -> EnumerationResult:
    auts = monoid_automorphisms(M)
    index = {t: i for i, t in enumerate(result.additions)}
    done = set()
    orbits = []
    for i, t in enumerate(result.additions):
        if i in done:
            continue
        orb = sorted({index[u] for u in (transport_table(t, phi) for phi in auts) if u in index})
        done.update(orb)
        orbits.append(tuple(orb))
    return EnumerationResult(result.additions, result.complete, tuple(orbits))
