"""Exact V-polynomial and Potts partition functions in an external field."""

from .weights import GaussianRational, SemigroupWeight, WeightKind, add, canonical_key
from .multigraph import Edge, EdgeWeight, WeightedMultigraph, components, contract_edge, delete_edge
from .polynomial import SparsePolynomial, poly_from_text

__all__ = [
    "GaussianRational",
    "SemigroupWeight",
    "WeightKind",
    "add",
    "canonical_key",
    "Edge",
    "EdgeWeight",
    "WeightedMultigraph",
    "components",
    "contract_edge",
    "delete_edge",
    "SparsePolynomial",
    "poly_from_text",
]
