"""Finite monoids, finite abelian groups, and the scalar-group axioms.

Elements are dense indices ``0..n-1``; labels are for presentation only.
Row convention everywhere: ``table[a][b] = a∘b``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional, Sequence

import numpy as np

from .errors import (
    AnnotationMismatch,
    BadShape,
    NoIdentity,
    NoInverse,
    NotAssociative,
    NotCommutative,
    NoZero,
)


def index_dtype(n: int):
    return np.int16 if n < 2**15 else np.int32


def frozen_table(table, n_rows: int, n_cols: int, bound: int) -> np.ndarray:
    """Coerce to a read-only integer array of the given shape with entries in [0, bound)."""
    try:
        arr = np.asarray(table)
    except ValueError as exc:  # ragged rows
        raise BadShape(detail=str(exc)) from None
    if arr.size == 0 and n_rows * n_cols == 0:
        arr = arr.reshape(n_rows, n_cols)
    if arr.shape != (n_rows, n_cols):
        raise BadShape(detail=f"expected {n_rows}x{n_cols}, got {arr.shape}")
    if arr.size and not np.issubdtype(arr.dtype, np.integer):
        raise BadShape(detail=f"non-integer entries ({arr.dtype})")
    if arr.size and (arr.min() < 0 or arr.max() >= bound):
        raise BadShape(detail=f"entry out of range [0, {bound})")
    out = np.array(arr, dtype=index_dtype(max(bound, 1)))
    out.flags.writeable = False
    return out


def first_true(mask: np.ndarray) -> Optional[tuple]:
    """Lexicographically least index tuple where ``mask`` is True."""
    flat = np.flatnonzero(mask.ravel())
    if flat.size == 0:
        return None
    return tuple(int(i) for i in np.unravel_index(flat[0], mask.shape))


def _identities(table: np.ndarray) -> list[int]:
    n = table.shape[0]
    ar = np.arange(n)
    return [e for e in range(n) if np.array_equal(table[e], ar) and np.array_equal(table[:, e], ar)]


def _associativity_witness(table: np.ndarray) -> Optional[tuple]:
    t = table.astype(np.intp)
    for a in range(t.shape[0]):
        # lhs[b, c] = (ab)c ; rhs[b, c] = a(bc)
        bad = t[t[a]] != t[a][t]
        hit = first_true(bad)
        if hit is not None:
            return (a, *hit)
    return None


@dataclass(frozen=True, eq=False)
class FiniteMonoid:
    order: int
    labels: tuple
    mul: np.ndarray
    one: int
    zero: Optional[int] = None
    minus_one: Optional[int] = None

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, FiniteMonoid):
            return NotImplemented
        return self.order == other.order and np.array_equal(self.mul, other.mul)

    def __hash__(self):
        return hash((self.order, self.mul.tobytes()))

    def __repr__(self):
        return f"FiniteMonoid(order={self.order}, one={self.one}, zero={self.zero}, minus_one={self.minus_one})"

    def __len__(self):
        return self.order

    @cached_property
    def inverses(self) -> tuple:
        """``inverses[a]`` is the two-sided inverse of ``a``, or ``None``."""
        m = self.mul
        out = []
        for a in range(self.order):
            cand = np.flatnonzero((m[a] == self.one) & (m[:, a] == self.one))
            out.append(int(cand[0]) if cand.size else None)
        return tuple(out)

    @cached_property
    def units(self) -> tuple:
        return tuple(a for a, inv in enumerate(self.inverses) if inv is not None)

    def power(self, a: int, n: int) -> int:
        r = self.one
        for _ in range(n):
            r = int(self.mul[r, a])
        return r

    def label(self, a: int) -> str:
        return self.labels[a]


@dataclass(frozen=True, eq=False)
class FiniteAbelianGroup:
    order: int
    add: np.ndarray
    zero: int
    neg: np.ndarray = field(repr=False)

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, FiniteAbelianGroup):
            return NotImplemented
        return self.order == other.order and np.array_equal(self.add, other.add)

    def __hash__(self):
        return hash((self.order, self.add.tobytes()))

    def __repr__(self):
        return f"FiniteAbelianGroup(order={self.order}, zero={self.zero})"

    def __len__(self):
        return self.order

    def sub(self, a: int, b: int) -> int:
        return int(self.add[a, self.neg[b]])

    def multiple(self, k: int, a: int) -> int:
        r = self.zero
        for _ in range(k):
            r = int(self.add[r, a])
        return r


@dataclass(frozen=True)
class ScalarGroupReport:
    is_scalar_group: bool
    zero: Optional[int]
    minus_one: Optional[int]
    eta_solutions: frozenset
    failure_witness: Optional[tuple] = None


def _zero_of(table: np.ndarray) -> Optional[int]:
    n = table.shape[0]
    for e in range(n):
        if np.all(table[e] == e) and np.all(table[:, e] == e):
            return e
    return None


def _minus_one_of(table: np.ndarray, one: int) -> Optional[int]:
    sols = square_roots_of_one(table, one)
    if len(sols) == 1:
        return one
    if len(sols) == 2:
        return sols[0] if sols[1] == one else sols[1]
    return None


def square_roots_of_one(table: np.ndarray, one: int) -> list[int]:
    return [int(e) for e in np.flatnonzero(np.diagonal(table) == one)]


def validate_monoid(order: int, labels: Optional[Sequence[str]], mul_table, *,
                    zero: Optional[int] = None, minus_one: Optional[int] = None) -> FiniteMonoid:
    """Validate a multiplication table and detect its identity, zero and -1.

    ``zero`` and ``minus_one`` are optional user annotations; they are
    cross-checked against detection and rejected on mismatch.
    """
    if order < 1:
        raise BadShape(detail="order must be positive")
    mul = frozen_table(mul_table, order, order, order)
    if labels is None:
        labels = tuple(str(i) for i in range(order))
    labels = tuple(str(x) for x in labels)
    if len(labels) != order or len(set(labels)) != order:
        raise BadShape(detail="labels must be distinct and one per element")
    ids = _identities(mul)
    if not ids:
        raise NoIdentity()
    wit = _associativity_witness(mul)
    if wit is not None:
        raise NotAssociative(*wit)
    one = ids[0]
    z = _zero_of(mul)
    m1 = _minus_one_of(mul, one)
    if zero is not None and zero != z:
        raise AnnotationMismatch(zero, detail=f"detected zero is {z}")
    if minus_one is not None and minus_one != m1:
        raise AnnotationMismatch(minus_one, detail=f"detected minus_one is {m1}")
    return FiniteMonoid(order, labels, mul, one, z, m1)


def validate_abelian_group(order: int, add_table) -> FiniteAbelianGroup:
    if order < 1:
        raise BadShape(detail="order must be positive")
    add = frozen_table(add_table, order, order, order)
    hit = first_true(add != add.T)
    if hit is not None:
        raise NotCommutative(*hit)
    ids = _identities(add)
    if not ids:
        raise NoZero()
    zero = ids[0]
    neg = np.empty(order, dtype=add.dtype)
    for a in range(order):
        cand = np.flatnonzero(add[a] == zero)
        if cand.size == 0:
            raise NoInverse(a)
        neg[a] = cand[0]
    wit = _associativity_witness(add)
    if wit is not None:
        raise NotAssociative(*wit)
    neg.flags.writeable = False
    return FiniteAbelianGroup(order, add, zero, neg)


def find_zero(M: FiniteMonoid) -> Optional[int]:
    return _zero_of(M.mul)


def find_minus_one(M: FiniteMonoid) -> Optional[int]:
    return _minus_one_of(M.mul, M.one)


def check_scalar_group(M: FiniteMonoid) -> ScalarGroupReport:
    sols = frozenset(square_roots_of_one(M.mul, M.one))
    z = find_zero(M)
    m1 = find_minus_one(M)
    failure = None
    if z is None:
        failure = ("no-zero", None)
    elif m1 is None:
        extra = sorted(sols - {M.one})
        failure = ("no-minus-one", extra[1] if len(extra) > 1 else None)
    else:
        for a in range(M.order):
            if a != z and M.inverses[a] is None:
                failure = ("non-invertible", a)
                break
    return ScalarGroupReport(failure is None, z, m1, sols, failure)


def cyclic_group(n: int) -> FiniteAbelianGroup:
    ar = np.arange(n)
    return validate_abelian_group(n, (ar[:, None] + ar[None, :]) % n)


def multiplicative_monoid_mod(n: int) -> FiniteMonoid:
    ar = np.arange(n)
    return validate_monoid(n, None, (ar[:, None] * ar[None, :]) % n)


def monoid_from_group(group: FiniteAbelianGroup) -> FiniteMonoid:
    """View a finite abelian group as a (multiplicative) monoid."""
    return validate_monoid(group.order, None, group.add)
