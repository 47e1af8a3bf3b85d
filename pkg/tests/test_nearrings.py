import numpy as np
import pytest
from hypothesis import given, strategies as st

from nearalg import fixtures as fx
from nearalg import oracles
from nearalg.core import cyclic_group, monoid_from_group
from nearalg.enumeration import monoid_automorphisms
from nearalg.errors import (
    NotAbelianGroup,
    NotLeftDistributive,
    NotMultiplicativeAutomorphism,
    NotRing,
    PowerLawFails,
)
from nearalg.nearrings import (
    classify,
    dickson_fixture,
    fun_nearring,
    hash_construction,
    multiplicative_order_census,
    nearring_from_tables,
    ring_zn,
    transport_addition,
    validate_nearring,
    verify_lema,
)
from nearalg.verify import lema_corpus

LEMA = lema_corpus()


def test_validate_examples(z9):
    N = ring_zn(3)
    assert validate_nearring(fx.m3(), N.add) == N
    validate_nearring(z9.plus.monoid, z9.plus_phi.add)
    with pytest.raises((NotAbelianGroup, NotLeftDistributive)):
        validate_nearring(fx.m2(), [[1, 0], [0, 1]])


def test_classify_examples():
    rep = classify(ring_zn(3))
    assert rep.is_nearfield and rep.is_ring and rep.fa and rep.sa
    F = fun_nearring(cyclic_group(2))
    rep = classify(F)
    assert not rep.is_ring and not rep.is_nearfield
    a, b, c = rep.witnesses["ring"]
    assert F.mul[F.add[a, b], c] != F.add[F.mul[a, c], F.mul[b, c]]
    H = hash_construction(ring_zn(4), 2)
    rep = classify(H)
    assert not rep.is_ring
    # ((1,0) + (1,0)) # (0,1) differs from the sum of products
    assert rep.witnesses["ring"] == (4, 4, 1)


def test_hash_examples():
    H = hash_construction(ring_zn(2), 1)
    assert H.order == 4 and classify(H).is_ring
    assert sorted(int(e) for e in np.flatnonzero(np.diagonal(H.mul) == H.one)) == [2, 3]
    assert H.group.neg[2] == 2 and H.monoid.minus_one == 3
    with pytest.raises(PowerLawFails) as e:
        hash_construction(fx.upper_triangular_z2(), 2)
    a, c = e.value.witness
    U = fx.upper_triangular_z2()
    sq = [U.monoid.power(x, 2) for x in range(U.order)]
    assert sq[U.mul[a, c]] != U.mul[sq[a], sq[c]]
    with pytest.raises(NotRing):
        hash_construction(fun_nearring(cyclic_group(2)), 1)


def test_fun_examples():
    assert fun_nearring(cyclic_group(1)).order == 1
    F2 = fun_nearring(cyclic_group(2))
    assert F2.order == 4 and not classify(F2).is_ring
    assert fun_nearring(cyclic_group(3)).order == 27


def test_transport_examples(z9):
    N = ring_zn(9)
    assert transport_addition(N, range(9)) == N
    P = transport_addition(N, fx.Z9_PHI)
    assert P.add[1, 2] == 6
    assert P == z9.plus_phi
    with pytest.raises(NotMultiplicativeAutomorphism) as e:
        transport_addition(N, [0, 2, 1, 3, 4, 5, 6, 7, 8])
    # lexicographically first failing pair; (2, 2) fails as well
    assert e.value.witness == (1, 1)
    phi = [0, 2, 1, 3, 4, 5, 6, 7, 8]
    assert phi[N.mul[2, 2]] != N.mul[phi[2], phi[2]]


def test_dickson():
    D = dickson_fixture()
    rep = classify(D)
    assert rep.is_nearfield and not rep.is_ring
    assert multiplicative_order_census(D) == {1: 1, 2: 1, 4: 6}
    assert all(D.group.multiple(3, a) == D.zero for a in range(9))


def test_lema_examples():
    verify_lema(ring_zn(3))
    verify_lema(dickson_fixture())
    rep = verify_lema(fun_nearring(cyclic_group(2)))
    assert not rep.fa


@pytest.mark.parametrize("name,N", LEMA, ids=[n for n, _ in LEMA])
def test_zero_and_negation_laws(name, N):
    mul, add, neg, z = N.mul, N.add, N.group.neg, N.zero
    assert np.all(mul[:, z] == z)
    assert np.array_equal(mul[:, neg], neg[mul])
    if N.minus_one == N.one:
        assert np.array_equal(neg, np.arange(N.order))
    verify_lema(N)


@given(st.sampled_from([2, 3, 4, 5, 6, 8, 9]), st.integers(1, 4))
def test_hash_iff_laws(k, n):
    R = ring_zn(k)
    law_mul = oracles.multiplicative_power_law(R, n)
    law_add = oracles.additive_power_law(R, n)
    try:
        H = hash_construction(R, n)
    except PowerLawFails:
        assert not law_mul
        return
    assert law_mul
    assert classify(H).is_ring == law_add


FIXTURE_RINGS = {
    "Z9": ring_zn(9),
    "Z9phi": transport_addition(ring_zn(9), fx.Z9_PHI),
    "GF3": ring_zn(3),
    "Z4": ring_zn(4),
    "dickson": dickson_fixture(),
    "GF4": fx.gf4(),
}


@pytest.mark.parametrize("name", sorted(FIXTURE_RINGS))
def test_transport_along_every_automorphism(name):
    N = FIXTURE_RINGS[name]
    autos = monoid_automorphisms(N.monoid)
    assert tuple(range(N.order)) in [tuple(a) for a in autos]
    for phi in autos:
        P = transport_addition(N, phi)
        phi = np.asarray(phi)
        assert np.array_equal(phi[P.add], N.add[phi[:, None], phi[None, :]])


def test_nearring_from_tables_matches_ring():
    N = ring_zn(5)
    assert nearring_from_tables(N.mul, N.add) == N
    G = monoid_from_group(cyclic_group(2))
    assert G.zero is None
