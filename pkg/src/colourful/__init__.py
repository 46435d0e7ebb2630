"""Exact Colourful Components / Colourful Partition on caterpillars and necklaces.

Also builds SAT-based hardness instances and ships brute-force oracles to
check every solver against.
"""

from .core import (
    ColouredGraph,
    colour_conflict,
    connected_components,
    edges_to_partition,
    is_colourful,
    validate_cc,
    validate_cp,
)
from .caterpillar import CaterpillarStructure, recognize, solve_cc, solve_cp
from .necklace import NecklaceStructure, recognize_necklace, solve_cc_necklace, solve_cp_necklace

__all__ = [
    "ColouredGraph",
    "CaterpillarStructure",
    "NecklaceStructure",
    "colour_conflict",
    "connected_components",
    "edges_to_partition",
    "is_colourful",
    "recognize",
    "recognize_necklace",
    "solve_cc",
    "solve_cc_necklace",
    "solve_cp",
    "solve_cp_necklace",
    "validate_cc",
    "validate_cp",
]

__version__ = "0.1.0"
