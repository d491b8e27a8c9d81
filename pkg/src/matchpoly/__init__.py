"""Exact matching polynomials of graphs, their coverings and hypergraph relaxations."""

from .graphs import Hypergraph, Multigraph
from .polys import DiffOperator, MultiPoly, UniPoly

__version__ = "0.1.0"

__all__ = ["Hypergraph", "Multigraph", "MultiPoly", "UniPoly", "DiffOperator", "__version__"]
