"""Substitution tilings as positional number systems.

Declarative inflation rules (a catalog plus a JSON rule-file format),
exact silver-number arithmetic, an expansion engine, aperiodicity
analysis, and deterministic SVG rendering.
"""

from .numberfield import (
    AlgebraicNumber,
    FieldElement,
    IntPolynomial,
    NumberField,
    SilverIndex,
    field_for,
    has_rational_root,
    silver_polynomial,
    silver_root,
)
from .geometry import Polygon, Polyline, Similarity
from .rules import (
    CATALOG_NAMES,
    Digit,
    PartitionMatrix,
    Piece,
    RuleSystem,
    TileType,
    build_1d_silver_rule,
    cartesian_square,
    catalog,
    derotate,
    load_rule,
    partition_matrix,
    save_rule,
    validate_measure,
)
from .engine import (
    DigitExpansion,
    PlacedTile,
    Tiling,
    decompose,
    expansions,
    inflate_outward,
    path,
    project_to_1d,
    recurrence_check,
    tile_counts,
)
from . import analysis, render

__version__ = "0.1.0"
