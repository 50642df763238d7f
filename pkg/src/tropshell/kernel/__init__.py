"""Exact rational geometry kernel: linear algebra, perturbations, polyhedra."""

from .eps import EpsRatio, EpsVector, moment_direction
from .linalg import (
    affine_rank_of,
    centroid,
    det,
    dot,
    nullspace,
    primitive,
    rank,
    solve,
    to_fraction,
    vec,
)
from .polyhedron import (
    Face,
    Halfspace,
    Polyhedron,
    affine_rank,
    lower_facets,
    orientation,
    vertex_ray_enumerate,
)

__all__ = [
    "EpsRatio",
    "EpsVector",
    "Face",
    "Halfspace",
    "Polyhedron",
    "affine_rank",
    "affine_rank_of",
    "centroid",
    "det",
    "dot",
    "lower_facets",
    "moment_direction",
    "nullspace",
    "orientation",
    "primitive",
    "rank",
    "solve",
    "to_fraction",
    "vec",
    "vertex_ray_enumerate",
]
