"""Explicit grid-minor constructions, each returning a checkable certificate."""

from .certificate import GridModelCertificate, SubgraphEmbedding, certificate_from_dict, check_embedding
from .clique import clique_in_product
from .lex import diagonal_classes, grid_subgraph_in_P3_lex_path, lex_grid_side
from .lower_bound import omega_sqrt_n_grid, threshold_height
from .star_star import grid_in_tree_star_product, tree_path
from .star_tree import (
    bipartite_in_star_tree,
    grid_bipartition,
    grid_in_star_path_strong,
    grid_in_star_tree_cartesian,
    star_root,
    strong_grid_side,
)

__all__ = [
    "GridModelCertificate",
    "SubgraphEmbedding",
    "bipartite_in_star_tree",
    "certificate_from_dict",
    "check_embedding",
    "clique_in_product",
    "diagonal_classes",
    "grid_bipartition",
    "grid_in_star_path_strong",
    "grid_in_star_tree_cartesian",
    "grid_in_tree_star_product",
    "grid_subgraph_in_P3_lex_path",
    "lex_grid_side",
    "omega_sqrt_n_grid",
    "star_root",
    "strong_grid_side",
    "threshold_height",
    "tree_path",
]
