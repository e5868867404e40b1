"""Exact geometry of totally real biquadratic Galois fields.

Klein-polyhedron facets of the positive integral elements and fundamental
domains of the totally positive unit group, in exact rational arithmetic.
"""

from .domain import CellComplex, ClosureReport, build_domain, complex_from_dict, verify_closed
from .field import BiquadraticField, Classification, FieldParams, GaloisType, classify_biquadratic
from .hull import Facet, facet_polytope, facet_to_off, find_seed, pivot, verify_support
from .lattice import IntegralLattice, enumerate_slab, load_lattice, points_on_level, preset_lattice
from .report import Report, run_preset
from .units import UnitGroup, canonicalize, search_units, unit_group

__version__ = "0.1.0"

__all__ = [
    "BiquadraticField", "CellComplex", "Classification", "ClosureReport", "Facet", "FieldParams",
    "GaloisType", "IntegralLattice", "Report", "UnitGroup", "build_domain", "canonicalize",
    "classify_biquadratic", "complex_from_dict", "enumerate_slab", "facet_polytope", "facet_to_off",
    "find_seed", "load_lattice", "pivot", "points_on_level", "preset_lattice", "run_preset",
    "search_units", "unit_group", "verify_closed", "verify_support",
]
