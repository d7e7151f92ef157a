"""Exact verification and construction of plane curves with two Galois points."""

from .fields import QQ, GF, ExtensionField, FieldElem, PrimeField, Rationals
from .poly import BiPoly, Poly, RatFunc, compose, map_degree, resultant
from .projective import Divisor, FiniteMoebiusGroup, Moebius, ProjPoint, generate, orbit_sum
from .criterion import check_a, check_b, check_c_inner, check_c_outer, search_inner
from .embedding import PlaneModel, invariant_generator, run_construction, verify_galois_projection
from .scenarios import run_scenario, run_search

__all__ = [
    "QQ", "GF", "ExtensionField", "FieldElem", "PrimeField", "Rationals",
    "BiPoly", "Poly", "RatFunc", "compose", "map_degree", "resultant",
    "Divisor", "FiniteMoebiusGroup", "Moebius", "ProjPoint", "generate", "orbit_sum",
    "check_a", "check_b", "check_c_inner", "check_c_outer", "search_inner",
    "PlaneModel", "invariant_generator", "run_construction", "verify_galois_projection",
    "run_scenario", "run_search",
]
