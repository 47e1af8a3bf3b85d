"""Finite near-algebraic structures: monoids, monoid modules, near-rings,
multi-near-rings, André modules and near-vector spaces."""

from .core import (
    FiniteAbelianGroup,
    FiniteMonoid,
    ScalarGroupReport,
    check_scalar_group,
    find_minus_one,
    find_zero,
    validate_abelian_group,
    validate_monoid,
)
from .modules import MModule, Submodule, validate_module
from .nearrings import NearRing, classify, validate_nearring
from .andre import MultiNearRing, check_andre, check_nvs, validate_multinearring
from .enumeration import EnumerationTask, enumerate_nearrings

__version__ = "0.1.0"
