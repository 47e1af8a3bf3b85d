import numpy as np
import pytest
from hypothesis import HealthCheck, settings, strategies as st

from nearalg import fixtures as fx
from nearalg.core import validate_monoid

settings.register_profile(
    "default",
    deadline=None,
    max_examples=40,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("default")


def relabel_table(t, perm):
    """Table of the structure transported along ``perm`` (old index i becomes perm[i])."""
    t = np.asarray(t)
    perm = np.asarray(perm)
    out = np.empty_like(t)
    out[np.ix_(perm, perm)] = perm[t]
    return out


def relabel_monoid(M, perm):
    return validate_monoid(M.order, None, relabel_table(M.mul, perm))


SMALL = fx.small_monoids()


@st.composite
def relabeled_small_monoid(draw):
    name = draw(st.sampled_from(sorted(SMALL)))
    M = SMALL[name]
    perm = draw(st.permutations(range(M.order)))
    return name, M, list(perm)


@st.composite
def corpus_module(draw, which=("M2", "M3")):
    kind = draw(st.sampled_from(which))
    corpus = fx.m2_module_corpus(6) if kind == "M2" else fx.m3_module_corpus(120, 20240607, 8)
    name, V = draw(st.sampled_from(corpus))
    return name, V


@pytest.fixture(scope="session")
def z9():
    return fx.z9_example()


@pytest.fixture(scope="session")
def j2():
    return fx.dickson_j2()


@pytest.fixture(scope="session")
def rq():
    return fx.enumerated_multinearring(fx.q8_monoid())
