import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from nearalg import fixtures as fx
from nearalg.core import (
    check_scalar_group,
    cyclic_group,
    find_minus_one,
    find_zero,
    multiplicative_monoid_mod,
    validate_abelian_group,
    validate_monoid,
)
from nearalg.errors import (
    AnnotationMismatch,
    BadShape,
    NoIdentity,
    NoInverse,
    NotAssociative,
    NotCommutative,
    NoZero,
)
from nearalg.nearrings import hash_construction, ring_zn

from conftest import SMALL, relabel_monoid, relabeled_small_monoid


def test_trivial_monoid():
    M = validate_monoid(1, None, [[0]])
    assert (M.one, M.zero, M.minus_one) == (0, 0, 0)


def test_m3():
    M = fx.m3()
    assert (M.one, M.zero, M.minus_one) == (1, 0, 2)


def test_or_table_is_a_monoid():
    # all 8 triples associate; 0 is the identity and 1 absorbs
    M = validate_monoid(2, None, [[0, 1], [1, 1]])
    assert (M.one, M.zero) == (0, 1)


def test_rejections():
    with pytest.raises(NoIdentity):
        validate_monoid(2, None, [[1, 1], [1, 1]])
    with pytest.raises(NotAssociative) as e:
        validate_monoid(3, None, [[0, 1, 2], [1, 2, 0], [2, 1, 0]])
    assert len(e.value.witness) == 3
    with pytest.raises(BadShape):
        validate_monoid(2, None, [[0, 1]])
    with pytest.raises(BadShape):
        validate_monoid(2, None, [[0, 1], [1, 2]])
    with pytest.raises(BadShape):
        validate_monoid(2, ["a", "a"], [[0, 1], [1, 1]])
    with pytest.raises(AnnotationMismatch):
        validate_monoid(3, None, fx.m3().mul, minus_one=1)
    validate_monoid(3, None, fx.m3().mul, zero=0, minus_one=2)


def test_rejected_witness_is_a_real_failure():
    t = np.array([[0, 1, 2], [1, 2, 0], [2, 1, 0]])
    with pytest.raises(NotAssociative) as e:
        validate_monoid(3, None, t)
    a, b, c = e.value.witness
    assert t[t[a, b], c] != t[a, t[b, c]]


def test_groups():
    G = cyclic_group(2)
    assert G.zero == 0 and list(G.neg) == [0, 1]
    validate_abelian_group(9, cyclic_group(9).add)
    with pytest.raises((NoZero, NoInverse)):
        validate_abelian_group(3, fx.m3().mul)
    with pytest.raises(NotCommutative):
        validate_abelian_group(2, [[0, 1], [0, 1]])


def test_find_zero_examples():
    assert find_zero(fx.m3()) == 0
    assert find_zero(fx.c2()) is None
    Q = fx.q8_monoid()
    z = find_zero(Q)
    assert z is not None and sum(1 for a in range(Q.order) if Q.inverses[a] is None) == 1
    assert Q.inverses[z] is None


def test_find_minus_one_examples():
    assert find_minus_one(fx.m3()) == 2
    assert find_minus_one(fx.klein()) is None
    H = hash_construction(ring_zn(2), 1)
    assert find_minus_one(H.monoid) == 1 * 2 + 1


def test_scalar_group_examples():
    assert check_scalar_group(fx.m3()).is_scalar_group
    rep = check_scalar_group(multiplicative_monoid_mod(9))
    assert not rep.is_scalar_group and rep.failure_witness == ("non-invertible", 3)
    H = hash_construction(ring_zn(2), 1)
    rep = check_scalar_group(H.monoid)
    assert rep.failure_witness == ("non-invertible", 0 * 2 + 1)


def _zero_by_scan(t):
    n = len(t)
    return [e for e in range(n) if all(t[e][a] == e == t[a][e] for a in range(n))]


@given(relabeled_small_monoid())
def test_zero_and_minus_one_properties(data):
    _, M, perm = data
    N = relabel_monoid(M, perm)
    zs = _zero_by_scan(N.mul.tolist())
    assert len(zs) <= 1
    assert find_zero(N) == (zs[0] if zs else None)
    sols = [e for e in range(N.order) if N.mul[e, e] == N.one]
    m = find_minus_one(N)
    if m is not None:
        assert N.mul[m, m] == N.one and len(sols) <= 2
    else:
        assert len(sols) >= 3
    # detection commutes with relabeling
    for a, b in ((M.one, N.one), (M.zero, N.zero), (M.minus_one, N.minus_one)):
        assert (a is None and b is None) or perm[a] == b


@given(relabeled_small_monoid())
def test_scalar_group_gives_group_of_nonzero_elements(data):
    _, M, perm = data
    N = relabel_monoid(M, perm)
    rep = check_scalar_group(N)
    if not rep.is_scalar_group:
        assert rep.failure_witness is not None
        return
    assert rep.zero is not None and rep.minus_one is not None
    assert rep.eta_solutions <= {N.one, rep.minus_one}
    nz = [a for a in range(N.order) if a != rep.zero]
    for a, b in itertools.product(nz, nz):
        assert N.mul[a, b] != rep.zero
    for a in nz:
        assert any(N.mul[a, b] == N.one == N.mul[b, a] for b in nz)


@given(st.sampled_from(fx.small_groups(8)))
def test_group_invariants(named):
    _, G = named
    add = G.add
    n = G.order
    for a in range(n):
        assert add[G.zero, a] == a
        assert add[a, G.neg[a]] == G.zero
        assert sorted(add[a]) == list(range(n))
    assert np.array_equal(add, add.T)


def test_small_monoid_corpus_is_valid():
    for name, M in SMALL.items():
        assert validate_monoid(M.order, None, M.mul) == M, name
