"""Exact restricted roots, c-functions and spherical weights for the
symmetric superpair (gl(p+q|r+s), gl(p|r) + gl(q|s))."""

from .core import GaussianRational, SuperDims, SuperMatrix, bracket, supertrace
from .pair import PairParams, build_pair, grid_pairs
from .weights import AStarWeight, HWeight
from .roots import (
    full_root_table,
    oracle_verify_roots,
    positive_restricted_system,
    restricted_root_data,
    weyl_vector,
    weyl_vector_supertrace,
)
from .chains import DeltaEpsChain, apply_chain, compatible_chain, reversal_chain
from .cfunction import c_evaluate, c_factorize, zeros_predicate
from .sphericity import classify, enumerate_spherical, self_dual_check

__version__ = "0.1.0"

__all__ = [
    "GaussianRational", "SuperDims", "SuperMatrix", "bracket", "supertrace",
    "PairParams", "build_pair", "grid_pairs",
    "AStarWeight", "HWeight",
    "full_root_table", "oracle_verify_roots", "positive_restricted_system",
    "restricted_root_data", "weyl_vector", "weyl_vector_supertrace",
    "DeltaEpsChain", "apply_chain", "compatible_chain", "reversal_chain",
    "c_evaluate", "c_factorize", "zeros_predicate",
    "classify", "enumerate_spherical", "self_dual_check",
]
