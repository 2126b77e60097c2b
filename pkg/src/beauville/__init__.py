"""Exact equivariant cohomology and exceptional collections on the Beauville surface."""

from .charpoly import Character, GradedCharPoly
from .curves import C, CPRIME, CurveAction
from .exceptional import Collection, Helix, NumericalType, search_collections
from .surface import K, O, CohomologyRanks, LineBundle, cohomology_S, parse_bundle

__all__ = [
    "C",
    "CPRIME",
    "Character",
    "CohomologyRanks",
    "Collection",
    "CurveAction",
    "GradedCharPoly",
    "Helix",
    "K",
    "LineBundle",
    "NumericalType",
    "O",
    "cohomology_S",
    "parse_bundle",
    "search_collections",
]

__version__ = "0.1.0"
