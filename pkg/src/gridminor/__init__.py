"""Grid minors in products of graphs: constructions, model checking and exact oracles."""

from .graph import (
    Graph,
    GraphError,
    ProductGraph,
    cartesian_product,
    lexicographic_product,
    make_caterpillar,
    make_complete,
    make_cycle,
    make_grid,
    make_path,
    make_star,
    make_subdivided_star,
    product,
    random_tree,
    strong_product,
)
from .models import Bramble, MinorModel, ValidationReport, product_bramble, validate_bramble, validate_model

__version__ = "0.1.0"

__all__ = [
    "Bramble", "Graph", "GraphError", "MinorModel", "ProductGraph", "ValidationReport",
    "cartesian_product", "lexicographic_product", "make_caterpillar", "make_complete", "make_cycle",
    "make_grid", "make_path", "make_star", "make_subdivided_star", "product", "product_bramble",
    "random_tree", "strong_product", "validate_bramble", "validate_model",
]
