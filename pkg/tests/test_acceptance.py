"""Acceptance gate: one test per criterion, each printing a pass/fail line.

Criteria 3 and 7 assert that the Z/9 product module is André. It is not
(QK2 fails at (1,1); see test_andre.py for the independent check), so both
are strict xfails. Their attainable parts are tested separately below.
"""

import pytest

from nearalg import fixtures as fx
from nearalg.andre import check_andre, check_nvs
from nearalg.nearrings import ring_zn, transport_addition
from nearalg.verify import CRITERIA

pytestmark = pytest.mark.acceptance

LIMITS = {1: 1, 2: 5, 3: 5, 4: 60, 5: 60, 6: 30, 7: 120, 8: 300, 9: 60, 10: 120, 11: 60}
Z9_NOT_ANDRE = "Z/9 product is not André: QK2 fails at (1,1), an independent set-based check agrees"


def run(number: int):
    res = CRITERIA[number]()
    print(res.line())
    for v in res.violations[:10]:
        print("   ", v)
    return res


def assert_criterion(number: int):
    res = run(number)
    assert res.elapsed < LIMITS[number], f"took {res.elapsed:.1f}s"
    assert res.ok, res.violations


@pytest.mark.parametrize("number", [1, 2, 4, 5, 6, 8, 9, 10, 11])
def test_criterion(number):
    assert_criterion(number)


@pytest.mark.xfail(strict=True, reason=Z9_NOT_ANDRE)
def test_criterion_3():
    assert_criterion(3)


@pytest.mark.xfail(strict=True, reason=Z9_NOT_ANDRE)
def test_criterion_7():
    assert_criterion(7)


def test_criterion_3_attainable_parts():
    z = fx.z9_example()
    assert transport_addition(ring_zn(9), fx.Z9_PHI) == z.plus_phi
    nvs = check_nvs(z.V)
    assert not nvs.is_nvs
    assert nvs.failure == ("monoid-not-scalar-group", ("non-invertible", 3))
    rep = check_andre(z.V, z.R)
    assert not rep.is_andre and rep.qk2_failure == 10


def test_criterion_7_without_z9():
    fixtures = {k: v for k, v in fx.andre_fixtures().items() if k != "z9"}
    res = CRITERIA[7](fixtures=fixtures)
    print(res.line())
    assert res.ok, res.violations
    assert res.elapsed < LIMITS[7]
    assert res.details["J2"]["submodules"] == 6
    assert res.details["GF3^3"]["submodules"] == 28


def test_criterion_7_z9_violations_are_all_from_z9():
    res = CRITERIA[7]()
    assert not res.ok
    assert all(v.startswith("z9") for v in res.violations)
