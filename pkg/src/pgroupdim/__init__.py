"""Exact arithmetic for a tower of finite p-groups: filtration series,
subgroup lattices over F_p, and logarithmic density profiles.

The compiled kernel extension is used when present; set PGROUPDIM_PURE=1
to force the pure-Python fallback.  `pgroupdim.kernels.BACKEND` reports
which one is active.
"""

from .group import Element, GroupParams
from .kernels import BACKEND
from .linalg import Subspace, rref
from .series import FiltrationSeries, SeriesKind, series
from .subgroups import (
    NormalSubgroup,
    base_subgroup,
    center_subgroup,
    commutator_subgroup,
    full_group,
    intersect,
    normal_closure,
    power_subgroup,
    powers_subgroup,
    product,
    trivial_subgroup,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "Element",
    "FiltrationSeries",
    "GroupParams",
    "NormalSubgroup",
    "SeriesKind",
    "Subspace",
    "__version__",
    "base_subgroup",
    "center_subgroup",
    "commutator_subgroup",
    "full_group",
    "intersect",
    "normal_closure",
    "power_subgroup",
    "powers_subgroup",
    "product",
    "rref",
    "series",
    "trivial_subgroup",
]
