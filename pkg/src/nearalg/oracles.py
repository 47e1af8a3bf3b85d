"""Slow, independent reference implementations used to cross-check the fast paths.

Everything here works on plain Python sets and nested loops and shares no
code with the closure kernels, validators or search.
"""

from __future__ import annotations

import itertools
from collections import deque
from typing import Optional

from .modules import MModule
from .andre import MultiNearRing


def _lists(V: MModule):
    add = [[int(x) for x in row] for row in V.group.add]
    act = [[int(x) for x in row] for row in V.act]
    return add, act


def subgroup_closure(add, zero: int, S) -> frozenset:
    H = {zero} | set(S)
    queue = deque(H)
    while queue:
        x = queue.popleft()
        for y in list(H):
            z = add[x][y]
            if z not in H:
                H.add(z)
                queue.append(z)
    return frozenset(H)


def orbit(act, S) -> set:
    return {row[s] for row in act for s in S}


def module_axioms_hold(V: MModule) -> bool:
    """Unital, action and endomorphism identities by nested loops."""
    add, act = _lists(V)
    mul = [[int(x) for x in row] for row in V.monoid.mul]
    n, m = V.order, V.monoid.order
    for v in range(n):
        if act[V.monoid.one][v] != v:
            return False
    for a in range(m):
        for b in range(m):
            for v in range(n):
                if act[mul[a][b]][v] != act[a][act[b][v]]:
                    return False
    for a in range(m):
        for u in range(n):
            for v in range(n):
                if act[a][add[u][v]] != add[act[a][u]][act[a][v]]:
                    return False
    return True


def quasi_kernel(V: MModule) -> frozenset:
    add, act = _lists(V)
    m = V.monoid.order
    out = set()
    for v in range(V.order):
        col = {act[g][v] for g in range(m)}
        if all(add[act[a][v]][act[b][v]] in col for a in range(m) for b in range(m)):
            out.add(v)
    return frozenset(out)


def qk1_holds(V: MModule, R: MultiNearRing, v: int) -> bool:
    add, act = _lists(V)
    m = V.monoid.order
    for N in R.designated:
        nadd = [[int(x) for x in row] for row in N.add]
        if all(act[nadd[a][b]][v] == add[act[a][v]][act[b][v]] for a in range(m) for b in range(m)):
            return True
    return False


def qk2_holds(V: MModule, Q) -> bool:
    add, act = _lists(V)
    Q = set(Q)
    for v in range(V.order):
        W = subgroup_closure(add, V.zero, orbit(act, {v}))
        C = subgroup_closure(add, V.zero, orbit(act, W & Q))
        if v not in C:
            return False
    return True


def andre_by_powerset(V: MModule, R: MultiNearRing) -> Optional[frozenset]:
    """Search every Q ⊆ V for (QK1) and (QK2); returns the first witness set or None."""
    good = [v for v in range(V.order) if v != V.zero and qk1_holds(V, R, v)]
    # subsets containing an element failing (QK1) are rejected outright;
    # the zero element may or may not be included
    for zero_in in (False, True):
        for k in range(len(good) + 1):
            for combo in itertools.combinations(good, k):
                Q = set(combo) | ({V.zero} if zero_in else set())
                if qk2_holds(V, Q):
                    return frozenset(Q)
    return None


def min_presentation_lengths(V: MModule, Q) -> dict:
    """m_v for every v reachable as a sum of nonzero elements of Q (BFS over sums)."""
    add, _ = _lists(V)
    qs = sorted(set(Q) - {V.zero})
    dist = {V.zero: 0}
    queue = deque([V.zero])
    while queue:
        x = queue.popleft()
        for q in qs:
            y = add[x][q]
            if y not in dist:
                dist[y] = dist[x] + 1
                queue.append(y)
    return dist


def distributive_everywhere(V: MModule, N) -> bool:
    add, act = _lists(V)
    nadd = [[int(x) for x in row] for row in N.add]
    m = V.monoid.order
    return all(act[nadd[a][b]][v] == add[act[a][v]][act[b][v]]
               for a in range(m) for b in range(m) for v in range(V.order))


def power(mul, one, a, n):
    x = one
    for _ in range(n):
        x = mul[x][a]
    return x


def multiplicative_power_law(R, n: int) -> bool:
    """∀a,c: (ac)^n = a^n c^n."""
    mul = [[int(x) for x in row] for row in R.mul]
    one = R.one
    k = R.order
    return all(power(mul, one, mul[a][c], n) == mul[power(mul, one, a, n)][power(mul, one, c, n)]
               for a in range(k) for c in range(k))


def additive_power_law(R, n: int) -> bool:
    """∀a,c: (a+c)^n = a^n + c^n."""
    mul = [[int(x) for x in row] for row in R.mul]
    add = [[int(x) for x in row] for row in R.add]
    one = R.one
    k = R.order
    return all(power(mul, one, add[a][c], n) == add[power(mul, one, a, n)][power(mul, one, c, n)]
               for a in range(k) for c in range(k))
