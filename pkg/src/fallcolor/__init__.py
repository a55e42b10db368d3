"""Exact computation, construction and verification of fall colorings."""

from __future__ import annotations

from .engine import (
    CapacityError,
    Coloring,
    FallReport,
    NoFallColoringError,
    Undecided,
    chi_f,
    chromatic_number,
    fall_set,
    find_fall_coloring,
    is_colorful,
    is_fall,
    is_proper,
    psi_f,
)
from .graph import Graph, build_named, cat_product, complement, disjoint_union, join, lex_product, mycielskian
from .graph6 import parse_graph6, to_graph6

__version__ = "0.1.0"

__all__ = [
    "CapacityError", "Coloring", "FallReport", "Graph", "NoFallColoringError", "Undecided",
    "build_named", "cat_product", "chi_f", "chromatic_number", "complement", "disjoint_union",
    "fall_set", "find_fall_coloring", "is_colorful", "is_fall", "is_proper", "join",
    "lex_product", "mycielskian", "parse_graph6", "psi_f", "to_graph6",
]
