import random

import numpy as np
import pytest
from hypothesis import given, strategies as st

from nearalg import fixtures as fx
from nearalg import oracles
from nearalg.andre import (
    Decomposer,
    check_andre,
    check_nvs,
    check_qk2,
    check_qk3,
    check_ring_module_equiv,
    check_tfae,
    decompose_quasikernel,
    distributivity_witness,
    endoset_to_module,
    max_qk1_set,
    min_presentation_length,
    nvs_to_endoset,
    product_of_designated,
    quasi_kernel,
    validate_certificate,
    validate_multinearring,
)
from nearalg.core import cyclic_group
from nearalg.errors import (
    BadShape,
    EmptySelection,
    HypothesisFailed,
    NotSingleRing,
    PreconditionFailed,
    TrivialModule,
)
from nearalg.modules import validate_module, zero_module
from nearalg.nearrings import dickson_fixture, ring_zn
from nearalg.subsets import mask_of, members, popcount

from conftest import corpus_module


@pytest.fixture(scope="module")
def z4m2():
    return validate_module(fx.m2(), cyclic_group(4), [[0, 0, 0, 0], [0, 1, 2, 3]])


@pytest.fixture(scope="module")
def r2():
    return fx.enumerated_multinearring(fx.m2())


def qk2_members(V, Q):
    """Set of v for which (QK2) holds at v, by plain set operations."""
    add, act = V.group.add.tolist(), V.act.tolist()
    out = set()
    for v in range(V.order):
        W = oracles.subgroup_closure(add, V.zero, oracles.orbit(act, {v}))
        if v in oracles.subgroup_closure(add, V.zero, oracles.orbit(act, W & set(Q))):
            out.add(v)
    return out


def qk3_oracle(V, Q):
    add, act = V.group.add.tolist(), V.act.tolist()
    neg = V.group.neg.tolist()
    M = V.monoid
    Q = set(Q)
    for v in range(V.order):
        if v in Q:
            continue
        W = oracles.subgroup_closure(add, V.zero, oracles.orbit(act, {v}))
        for q in sorted(Q):
            for a in range(M.order):
                if a == M.zero:
                    continue
                for w in W:
                    r = add[w][neg[act[a][q]]]
                    if not any(add[q][act[b][r]] in W for b in range(M.order)):
                        return False
    return True


# -------------------------------------------------------------------------- quasi-kernel


def test_quasi_kernel_examples(z9):
    V = fx.gf3_power(2)
    assert popcount(quasi_kernel(V).qv) == 9
    qv = quasi_kernel(z9.V).qv
    assert qv >> 9 & 1 and qv >> 1 & 1  # (1,0) and (0,1)
    assert popcount(qv) == 45
    assert members(quasi_kernel(zero_module(fx.m3())).qv) == [0]


def test_quasi_kernel_gamma_witness(z9):
    rep = quasi_kernel(z9.V)
    act, add = z9.V.act, z9.V.group.add
    assert sorted(rep.gamma_witness) == members(rep.qv)
    for v, g in rep.gamma_witness.items():
        col = act[:, v]
        assert np.array_equal(add[col[:, None], col[None, :]], col[g])


@pytest.mark.parametrize("name", ["z9", "J", "J2", "GF3^2", "Z4/M2"])
def test_quasi_kernel_matches_oracle(name, z9, z4m2):
    V = {"z9": z9.V, "J": fx.dickson_j(), "J2": fx.dickson_j2(), "GF3^2": fx.gf3_power(2),
         "Z4/M2": z4m2}[name]
    assert set(members(quasi_kernel(V).qv)) == oracles.quasi_kernel(V)


# -------------------------------------------------------------------------- Q* and QK2


def test_empty_designation_collapses(z4m2):
    R = validate_multinearring(fx.m2(), [])
    assert max_qk1_set(z4m2, R)[0] == 1
    assert not check_andre(z4m2, R).is_andre
    assert check_andre(zero_module(fx.m2()), R).is_andre


def test_z9_qstar(z9):
    qstar, wit = max_qk1_set(z9.V, z9.R)
    axes = {9 * m for m in range(9)} | set(range(9))
    assert axes <= set(members(qstar))
    assert qstar == quasi_kernel(z9.V).qv
    for v in members(qstar):
        if v:
            assert oracles.qk1_holds(z9.V, validate_multinearring(z9.R.monoid, [z9.R.designated[wit[v]]]), v)


def test_check_qk2_examples(z4m2):
    for V in (z4m2, fx.gf3_power(2), fx.dickson_j2()):
        assert check_qk2(V, (1 << V.order) - 1) == (True, None)
    assert check_qk2(z4m2, 0b101) == (False, 1)
    assert check_qk2(zero_module(fx.m2()), 0) == (True, None)


def test_z9_product_is_not_andre(z9):
    """Independent set-based recomputation of the (1,1) failure."""
    V = z9.V
    add, act = V.group.add.tolist(), V.act.tolist()
    qstar = {v for v in range(V.order) if v == 0 or oracles.qk1_holds(V, z9.R, v)}
    assert len(qstar) == 45
    v = 9 * 1 + 1
    W = oracles.subgroup_closure(add, 0, oracles.orbit(act, {v}))
    assert len(W) == 27
    assert W & qstar == {9 * a + b for a in (0, 3, 6) for b in (0, 3, 6)}
    assert v not in oracles.subgroup_closure(add, 0, oracles.orbit(act, W & qstar))
    assert not oracles.qk2_holds(V, qstar)
    rep = check_andre(V, z9.R)
    assert not rep.is_andre and rep.qk2_failure == v
    # the single factors are André
    assert check_andre(z9.plus.module, z9.R).is_andre
    assert check_andre(z9.plus_phi.module, z9.R).is_andre


def test_andre_examples(z4m2, r2):
    assert not check_andre(z4m2, r2).is_andre
    Z4 = ring_zn(4)
    R = validate_multinearring(Z4.monoid, [Z4])
    rep = check_andre(Z4.module, R)
    assert rep.is_andre and rep.qstar == 0b1111


def test_validate_multinearring_rejects_duplicates():
    N = ring_zn(3)
    with pytest.raises(BadShape):
        validate_multinearring(N.monoid, [N, N.add])


# -------------------------------------------------------------------------- QK3


def test_qk3_examples(z4m2, z9):
    for V in (fx.gf3_power(2), fx.dickson_j2(), zero_module(fx.m3())):
        for Q in (0, quasi_kernel(V).qv, 1 << (V.order - 1)):
            assert check_qk3(V, Q)[0] and qk3_oracle(V, members(Q))
    assert check_qk3(z4m2, 0b101) == (True, None)
    assert qk3_oracle(z4m2, [0, 2])
    ok, wit = check_qk3(z9.V, quasi_kernel(z9.V).qv)
    assert not ok and wit == (10, 1, 3, 6)
    assert not qk3_oracle(z9.V, members(quasi_kernel(z9.V).qv))


@given(corpus_module(), st.data())
def test_qk3_matches_oracle(named, data):
    _, V = named
    Q = data.draw(st.integers(0, (1 << V.order) - 1))
    assert check_qk3(V, Q)[0] == qk3_oracle(V, members(Q))


# -------------------------------------------------------------------------- near-vector spaces


def test_nvs_examples(z9):
    for k in range(1, 4):
        assert check_nvs(fx.gf3_power(k)).is_nvs
    rep = check_nvs(z9.V)
    assert rep.failure == ("monoid-not-scalar-group", ("non-invertible", 3))
    assert check_nvs(dickson_fixture().module).is_nvs
    assert check_nvs(fx.dickson_j2()).is_nvs


def test_endoset_examples():
    rep = nvs_to_endoset(fx.gf3_power(2))
    assert len(rep.fstar) == 3 and all(rep.conditions.values())
    rep = nvs_to_endoset(dickson_fixture().module)
    assert len(rep.fstar) == 9 and all(rep.conditions.values())
    assert rep.element_map_injective and rep.element_map_multiplicative
    with pytest.raises(TrivialModule):
        nvs_to_endoset(zero_module(fx.m3()))
    with pytest.raises(PreconditionFailed):
        nvs_to_endoset(fx.z9_example().V)


def test_endoset_round_trip():
    V = endoset_to_module(cyclic_group(3), [[0, 1, 2], [0, 2, 1], [0, 0, 0]])
    assert check_nvs(V).is_nvs
    rep = nvs_to_endoset(V)
    assert sorted(map(tuple, rep.fstar)) == sorted([(0, 0, 0), (0, 1, 2), (0, 2, 1)])


# -------------------------------------------------------------------------- products, single ring


def test_product_of_designated(z9):
    P, Q = product_of_designated(z9.R, [0])
    assert P == z9.plus.module and Q == 0b10
    assert check_andre(P, z9.R).is_andre
    P, Q = product_of_designated(z9.R, [0, 1])
    assert P == z9.V and members(Q) == [1, 9]
    P, Q = product_of_designated(z9.R, [0, 0])
    assert members(Q) == [1, 9] and check_andre(P, z9.R).is_andre
    with pytest.raises(EmptySelection):
        product_of_designated(z9.R, [])


def test_ring_module_examples(z4m2, r2):
    Z4 = ring_zn(4)
    assert check_ring_module_equiv(Z4.module, validate_multinearring(Z4.monoid, [Z4]))
    assert not check_ring_module_equiv(z4m2, r2)
    assert distributivity_witness(z4m2, r2.designated[0]) == (1, 1, 1)
    assert check_ring_module_equiv(zero_module(fx.m2()), r2)
    with pytest.raises(NotSingleRing):
        check_ring_module_equiv(z4m2, validate_multinearring(fx.m2(), []))


# -------------------------------------------------------------------------- decomposition and TFAE


def test_decompose_examples():
    V = fx.gf3_power(2)
    r3 = fx.enumerated_multinearring(fx.m3())
    for v in range(9):
        c = decompose_quasikernel(V, v, r3)
        assert c.parts == ((v,) if v else ())
        assert c.m_v == (1 if v else 0) and c.trail == ()


def test_decompose_j2_matches_bfs(rq):
    V = fx.dickson_j2()
    D = Decomposer(V, rq)
    bfs = oracles.min_presentation_lengths(V, oracles.quasi_kernel(V))
    dist = {}
    for v in range(V.order):
        c = D.decompose(v)
        assert validate_certificate(V, c, D.qv)
        assert c.m_v == bfs[v] == min_presentation_length(V, v)
        dist[c.m_v] = dist.get(c.m_v, 0) + 1
    assert dist == {0: 1, 1: 32, 2: 48}


def test_decompose_z9_hypotheses_fail(z9):
    with pytest.raises(HypothesisFailed) as e:
        decompose_quasikernel(z9.V, 10, z9.R)
    assert e.value.witness == (10, 1, 3, 6)
    assert min_presentation_length(z9.V, 10) == 2


def test_tampered_certificate_is_rejected(rq):
    V = fx.dickson_j2()
    D = Decomposer(V, rq)
    c = D.decompose(12)
    assert len(c.parts) == 2
    bad = type(c)(c.target, (c.parts[0], c.parts[0]), c.m_v, ())
    assert not validate_certificate(V, bad, D.qv)


def test_tfae_examples():
    for V in (fx.gf3_power(2), fx.dickson_j2(), zero_module(fx.m3())):
        rep = check_tfae(V)
        assert rep.every_submodule_generated and rep.qk2_for_qv and rep.qk2_prime
        assert rep.closure_identity


# -------------------------------------------------------------------------- properties


@given(corpus_module(), st.data())
def test_qstar_is_maximal(named, data):
    name, V = named
    R = fx.enumerated_multinearring(V.monoid)
    qstar = set(members(max_qk1_set(V, R)[0]))
    Q = set(members(data.draw(st.integers(0, (1 << V.order) - 1))))
    if all(oracles.qk1_holds(V, R, v) for v in Q - {V.zero}):
        assert Q - {V.zero} <= qstar
    for v in qstar - {V.zero}:
        assert oracles.qk1_holds(V, R, v)


@given(corpus_module(), st.data())
def test_qk2_membership_is_monotone(named, data):
    _, V = named
    Q = data.draw(st.integers(0, (1 << V.order) - 1))
    Q2 = Q | data.draw(st.integers(0, (1 << V.order) - 1))
    small, big = qk2_members(V, members(Q)), qk2_members(V, members(Q2))
    assert small <= big
    assert check_qk2(V, Q)[0] == (len(small) == V.order)


@given(st.sampled_from([g for g in fx.small_groups(8) if g[1].order > 1]), st.integers(0, 2**32))
def test_andre_matches_powerset_with_two_designated(named, seed):
    """Random modules over the Z/4 monoid, which carries two near-rings."""
    _, G = named
    M = fx.z4_monoid()
    R = fx.enumerated_multinearring(M)
    assert len(R.designated) == 2
    V = fx.random_module(M, G, random.Random(seed))
    if V is None:
        return
    fast = check_andre(V, R).is_andre
    assert fast == (oracles.andre_by_powerset(V, R) is not None)


@given(corpus_module(("M3",)))
def test_nvs_andre_and_tfae(named):
    _, V = named
    R = fx.enumerated_multinearring(V.monoid)
    nvs = check_nvs(V).is_nvs
    assert nvs == check_andre(V, R).is_andre
    if nvs:
        check_tfae(V)
        D = Decomposer(V, R)
        for v in range(V.order):
            assert validate_certificate(V, D.decompose(v), D.qv)


def test_mask_helpers_agree():
    assert mask_of([0, 3]) == 0b1001
    assert np.array_equal(np.flatnonzero([1, 0, 0, 1]), members(0b1001))
