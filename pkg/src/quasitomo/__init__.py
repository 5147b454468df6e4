"""Exact X-ray uniqueness tools for cyclotomic model sets.

The submodules carry the detail; the names below are the everyday surface.
"""

from .cyclotomic import CycNum, coerce, conjugate, norm_full, norm_to_Q, totient, zeta
from .geometry import Direction, Polygon, angle_sort, convex_hull, cross_ratio, make_direction
from .modelset import (
    SUPPORTED_ORDERS,
    ModelSetSpec,
    PointSet,
    UnsupportedOrderError,
    ammann_beenker,
    default_spec,
    generate_patch,
    homothety_into,
    lattice_spec,
)
from .presets import direction_set
from .unipoly import check_determination, f_m, hexagon_for, is_U_polygon, search_cross_ratio, witness_pair_from_polygon
from .uniqueness import brute_force_determined, contiguous_pair, switching_pair
from .xray import recover_small, xray, xrays_equal

__version__ = "0.1.0"

__all__ = [
    "CycNum", "zeta", "coerce", "conjugate", "norm_full", "norm_to_Q", "totient",
    "Direction", "Polygon", "make_direction", "angle_sort", "convex_hull", "cross_ratio",
    "SUPPORTED_ORDERS", "ModelSetSpec", "PointSet", "UnsupportedOrderError",
    "ammann_beenker", "lattice_spec", "default_spec", "generate_patch", "homothety_into",
    "direction_set",
    "f_m", "is_U_polygon", "hexagon_for", "check_determination", "search_cross_ratio",
    "witness_pair_from_polygon",
    "switching_pair", "contiguous_pair", "brute_force_determined",
    "xray", "xrays_equal", "recover_small",
]
