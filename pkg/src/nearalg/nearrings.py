"""Near-rings and near-fields on a fixed carrier.

A near-ring here is left unitary abelian: an abelian group with a monoid
multiplication satisfying a·(b+c) = a·b + a·c, i.e. the carrier is a module
over its own multiplicative monoid.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional, Sequence

import numpy as np

from .core import (
    FiniteAbelianGroup,
    FiniteMonoid,
    first_true,
    square_roots_of_one,
    validate_abelian_group,
    validate_monoid,
)
from .errors import (
    AlgebraError,
    BoundExceeded,
    NotAbelianGroup,
    NotLeftDistributive,
    NotMultiplicativeAutomorphism,
    NotRing,
    PowerLawFails,
    TheoremViolation,
)
from .modules import MModule, check_action_properties, validate_module

FUN_BOUND = 4096


@dataclass(frozen=True, eq=False)
class NearRing:
    monoid: FiniteMonoid
    group: FiniteAbelianGroup

    @property
    def order(self) -> int:
        return self.monoid.order

    @property
    def mul(self) -> np.ndarray:
        return self.monoid.mul

    @property
    def add(self) -> np.ndarray:
        return self.group.add

    @property
    def zero(self) -> int:
        return self.group.zero

    @property
    def one(self) -> int:
        return self.monoid.one

    @property
    def minus_one(self) -> int:
        """Additive inverse of the multiplicative identity."""
        return int(self.group.neg[self.monoid.one])

    @cached_property
    def module(self) -> MModule:
        """The near-ring as a module over its own multiplicative monoid."""
        return validate_module(self.monoid, self.group, self.monoid.mul)

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, NearRing):
            return NotImplemented
        return self.monoid == other.monoid and self.group == other.group

    def __hash__(self):
        return hash((hash(self.monoid), hash(self.group)))

    def __repr__(self):
        return f"NearRing(order={self.order}, zero={self.zero}, one={self.one})"


@dataclass(frozen=True)
class NearRingReport:
    is_nearfield: bool
    is_ring: bool
    fa: bool
    sa: bool
    s1_for_minus1: bool
    witnesses: dict = field(default_factory=dict)


def left_distributivity_witness(mul: np.ndarray, add: np.ndarray) -> Optional[tuple]:
    mul = mul.astype(np.intp)
    add = add.astype(np.intp)
    for a in range(mul.shape[0]):
        row = mul[a]
        hit = first_true(row[add] != add[row[:, None], row[None, :]])
        if hit is not None:
            return (a, *hit)
    return None


def right_distributivity_witness(mul: np.ndarray, add: np.ndarray) -> Optional[tuple]:
    mul = mul.astype(np.intp)
    add = add.astype(np.intp)
    for a in range(mul.shape[0]):
        # lhs[b, c] = (a+b)c ; rhs[b, c] = ac + bc
        lhs = mul[add[a]]
        rhs = add[mul[a][None, :], mul]
        hit = first_true(lhs != rhs)
        if hit is not None:
            return (a, *hit)
    return None


def validate_nearring(M: FiniteMonoid, add_table) -> NearRing:
    try:
        group = validate_abelian_group(M.order, add_table)
    except AlgebraError as exc:
        raise NotAbelianGroup(exc) from exc
    wit = left_distributivity_witness(M.mul, group.add)
    if wit is not None:
        raise NotLeftDistributive(*wit)
    return NearRing(M, group)


def nearfield_failure(N: NearRing) -> Optional[tuple]:
    """None if the nonzero elements form a multiplicative group, else (reason, element)."""
    z, one, mul = N.zero, N.one, N.mul
    if N.order == 1 or one == z:
        return ("no-nonzero-identity", one)
    nz = np.array([a for a in range(N.order) if a != z])
    sub = mul[np.ix_(nz, nz)]
    hit = first_true(sub == z)
    if hit is not None:
        return ("zero-divisor", int(nz[hit[0]]))
    for a in nz:
        if N.monoid.inverses[a] is None:
            return ("non-invertible", int(a))
    return None


def classify(N: NearRing) -> NearRingReport:
    """All flags by exhaustive scan; every flag is computed even after a failure."""
    wit = {}
    nf = nearfield_failure(N)
    if nf is not None:
        wit["nearfield"] = nf
    rd = right_distributivity_witness(N.mul, N.add)
    if rd is not None:
        wit["ring"] = rd
    props = check_action_properties(N.module)
    if props.fa_witness is not None:
        wit["fa"] = props.fa_witness
    mul = N.mul
    z, m1 = N.zero, N.minus_one
    bad = (mul[z] != z) | (mul[m1] != N.group.neg)
    sa_hit = np.flatnonzero(bad)
    if sa_hit.size:
        wit["sa"] = int(sa_hit[0])
    sols = set(square_roots_of_one(mul, N.one))
    s1 = sols == {N.one, m1}
    if not s1:
        wit["s1"] = tuple(sorted(sols ^ {N.one, m1}))
    return NearRingReport(nf is None, rd is None, props.fa, sa_hit.size == 0, s1, wit)


def verify_lema(N: NearRing) -> NearRingReport:
    """Check on this instance: near-field ⇒ FA; FA ⇒ SA with -1 = -(1); FA ⇒ η²=1 only for η = ±1."""
    rep = classify(N)
    if rep.is_nearfield and not rep.fa:
        raise TheoremViolation(*rep.witnesses.get("fa", ()), detail="near-field without FA")
    if rep.fa and not rep.sa:
        raise TheoremViolation(rep.witnesses.get("sa"), detail="FA without SA")
    if rep.fa and not rep.s1_for_minus1:
        raise TheoremViolation(*rep.witnesses.get("s1", ()), detail="FA but η²=1 has extra solutions")
    return rep


def module_of(N: NearRing) -> MModule:
    return N.module


# --------------------------------------------------------------------------
# constructions


def nearring_from_tables(mul_table, add_table, labels: Optional[Sequence[str]] = None) -> NearRing:
    n = len(mul_table)
    M = validate_monoid(n, labels, mul_table)
    return validate_nearring(M, add_table)


def hash_tables(R: NearRing, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Raw (#, +) tables on R×R, index (a, b) -> a·|R| + b, without validation."""
    k = R.order
    mul = R.mul.astype(np.int64)
    add = R.add.astype(np.int64)
    pw = np.array([R.monoid.power(a, n) for a in range(k)])
    idx = np.arange(k * k)
    A, B = idx // k, idx % k
    a, c = A[:, None], A[None, :]
    b, d = B[:, None], B[None, :]
    hmul = mul[a, c] * k + add[mul[b, c], mul[pw[a], d]]
    hadd = add[a, c] * k + add[b, d]
    return hmul, hadd


def power_law_witness(R: NearRing, n: int) -> Optional[tuple]:
    """First (a, c) with (ac)^n != a^n c^n."""
    pw = [R.monoid.power(a, n) for a in range(R.order)]
    for a in range(R.order):
        for c in range(R.order):
            if pw[int(R.mul[a, c])] != int(R.mul[pw[a], pw[c]]):
                return (a, c)
    return None


def hash_construction(R: NearRing, n: int) -> NearRing:
    """(R×R, +, #) with (a,b)#(c,d) = (ac, bc + aⁿd).

    Success is decided by validating the constructed tables, not by the
    power law; the law is only consulted to produce the failure witness.
    """
    if not classify(R).is_ring:
        raise NotRing(*classify(R).witnesses.get("ring", ()))
    hmul, hadd = hash_tables(R, n)
    labels = [f"({R.monoid.labels[i // R.order]},{R.monoid.labels[i % R.order]})"
              for i in range(R.order ** 2)]
    try:
        M = validate_monoid(R.order ** 2, labels, hmul)
        return validate_nearring(M, hadd)
    except AlgebraError as exc:
        wit = power_law_witness(R, n)
        if wit is None:
            raise TheoremViolation(detail=f"power law holds but # failed: {exc}") from exc
        raise PowerLawFails(*wit, detail=str(exc)) from exc


def fun_nearring(A: FiniteAbelianGroup, bound: int = FUN_BOUND) -> NearRing:
    """Endofunctions of A with pointwise addition and f·g = g∘f.

    Function f is encoded as the base-|A| number f(0) f(1) … f(|A|-1).
    """
    k = A.order
    N = k ** k
    if N > bound:
        raise BoundExceeded(N, detail=f"bound is {bound}")
    weights = k ** np.arange(k - 1, -1, -1, dtype=np.int64)
    funcs = (np.arange(N, dtype=np.int64)[:, None] // weights[None, :]) % k
    add = A.add.astype(np.int64)
    fadd = np.empty((N, N), dtype=np.int64)
    fmul = np.empty((N, N), dtype=np.int64)
    for f in range(N):
        fadd[f] = add[funcs[f][None, :], funcs].dot(weights)
        fmul[f] = funcs[:, funcs[f]].dot(weights)  # (g∘f)(x) = g(f(x))
    labels = ["".join(str(int(t)) for t in row) for row in funcs]
    M = validate_monoid(N, labels, fmul)
    return validate_nearring(M, fadd)


def is_multiplicative_automorphism(M: FiniteMonoid, phi) -> Optional[tuple]:
    """None if ``phi`` is a monoid automorphism, else a witness pair."""
    phi = np.asarray(phi, dtype=np.intp)
    if phi.shape != (M.order,) or sorted(phi.tolist()) != list(range(M.order)):
        return ("not-bijective",)
    mul = M.mul.astype(np.intp)
    hit = first_true(phi[mul] != mul[phi[:, None], phi[None, :]])
    return hit


def transport_addition(N: NearRing, phi) -> NearRing:
    """New addition a ⊕ b = φ⁻¹(φ(a) + φ(b)) along a multiplicative automorphism φ."""
    bad = is_multiplicative_automorphism(N.monoid, phi)
    if bad is not None:
        raise NotMultiplicativeAutomorphism(*(w for w in bad if not isinstance(w, str)),
                                            detail=None if len(bad) == 2 else bad[0])
    phi = np.asarray(phi, dtype=np.intp)
    inv = np.argsort(phi)
    add = N.add.astype(np.intp)
    return validate_nearring(N.monoid, inv[add[phi[:, None], phi[None, :]]])


def ring_zn(n: int) -> NearRing:
    ar = np.arange(n)
    return nearring_from_tables((ar[:, None] * ar[None, :]) % n, (ar[:, None] + ar[None, :]) % n)


def gf9_tables() -> tuple[np.ndarray, np.ndarray, list[str]]:
    """GF(9) = GF(3)[i]/(i²+1); element a + b·i has index 3a + b."""
    idx = np.arange(9)
    a, b = idx // 3, idx % 3
    add = ((a[:, None] + a[None, :]) % 3) * 3 + (b[:, None] + b[None, :]) % 3
    re = (a[:, None] * a[None, :] - b[:, None] * b[None, :]) % 3
    im = (a[:, None] * b[None, :] + b[:, None] * a[None, :]) % 3
    mul = re * 3 + im
    labels = []
    for x, y in zip(a, b):
        parts = []
        if x:
            parts.append(str(x))
        if y:
            parts.append("i" if y == 1 else f"{y}i")
        labels.append("+".join(parts) or "0")
    return mul, add, labels


def dickson_fixture() -> NearRing:
    """The near-field of order 9 that is not a field.

    x∘y = x·y when x is 0 or a nonzero square of GF(9), else x·y³; this is
    the left-distributive form (the map y ↦ y³ is additive).
    """
    fmul, add, labels = gf9_tables()
    squares = {int(fmul[x, x]) for x in range(1, 9)}
    cube = [int(fmul[fmul[y, y], y]) for y in range(9)]
    mul = np.empty((9, 9), dtype=np.int64)
    for x in range(9):
        for y in range(9):
            mul[x, y] = fmul[x, y] if (x == 0 or x in squares) else fmul[x, cube[y]]
    return nearring_from_tables(mul, add, labels)


def multiplicative_order_census(N: NearRing) -> dict[int, int]:
    census: dict[int, int] = {}
    for a in range(N.order):
        if a == N.zero:
            continue
        k, x = 1, a
        while x != N.one:
            x = int(N.mul[x, a])
            k += 1
            if k > N.order:
                raise TheoremViolation(a, detail="element of infinite order in a finite group")
        census[k] = census.get(k, 0) + 1
    return dict(sorted(census.items()))
