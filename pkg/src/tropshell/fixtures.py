"""The worked examples, as Python objects.

The JSON files under ``fixtures/`` are written from these by
``python3 -m tropshell.fixtures fixtures``; the test suite checks that the
two agree.
"""

from __future__ import annotations

import os
import sys

from .kernel import Polyhedron
from .subdivision import PointConfiguration
from .tropical import TropicalMatrix, TropicalPolynomial

# Lattice points of conv{(0,2),(1,0),(3,0),(3,1)}, labelled 1..7 in the order
# under which the weights below give the triangles 123, 234, 346, 136, 156,
# 157, 567.  The labelling is re-derived from scratch in the tests.
BRODSKY_POINTS = [(0, 2), (1, 0), (1, 1), (2, 0), (2, 1), (3, 0), (3, 1)]
BRODSKY_WEIGHTS = [0, 3, 0, 1, 1, 0, 4]
BRODSKY_TRIANGLES = ["123", "234", "346", "136", "156", "157", "567"]
BRODSKY_ORDER = list(BRODSKY_TRIANGLES)

# min{2y, 3+x, x+y, 1+2x, 1+2x+y, 3x, 4+3x+y}
HYPERELLIPTIC_TERMS = [((0, 2), 0), ((1, 0), 3), ((1, 1), 0), ((2, 0), 1), ((2, 1), 1), ((3, 0), 0), ((3, 1), 4)]

# two bounded and twelve unbounded regions; full support
PROJECTIVE = [[0, 0, 0, 0], [0, 2, 3, 4], [0, 1, -1, 2]]
# its bounded cells in lex order are not a shelling
COUNTERLEX = [[0, 0, 0, 0], [0, 1, 2, 2], [2, 1, 1, 4]]
# -inf entries make the face at infinity of the dome a quadrangle
PARTIAL_SUPPORT = [[0, 0, -1], ["-inf", -1, 0], [0, "-inf", "-inf"]]

HEXAGON = [(1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1)]


def brodsky() -> PointConfiguration:
    return PointConfiguration(BRODSKY_POINTS, BRODSKY_WEIGHTS)


def hyperelliptic() -> TropicalPolynomial:
    return TropicalPolynomial(HYPERELLIPTIC_TERMS, [str(i + 1) for i in range(len(HYPERELLIPTIC_TERMS))])


def projective_example() -> TropicalMatrix:
    return TropicalMatrix(PROJECTIVE)


def counterlex() -> TropicalMatrix:
    return TropicalMatrix(COUNTERLEX)


def partial_support() -> TropicalMatrix:
    return TropicalMatrix(PARTIAL_SUPPORT)


def hexagon_ray() -> Polyhedron:
    """A lattice hexagon in the plane z = 0, extended upward."""
    return Polyhedron([(x, y, 0) for x, y in HEXAGON], [(0, 0, 1)])


def pinned_matching():
    """A matching on Sigma_+ for the Brodsky triangulation with critical vertex 4 and
    the boundary edge 17 matched to the triangle 157, found by search."""
    from .morse import AcyclicMatching, constrained_collapse, sphere_extension
    from .subdivision import regular_subdivision

    sigma = regular_subdivision(brodsky())
    mu = constrained_collapse(sigma, alpha="4", pair=("17", "157"), restrict_boundary=True)
    return AcyclicMatching.from_pairs(sphere_extension(sigma), mu.pairs)


def write_all(directory: str) -> list[str]:
    from . import io
    from .shelling import ShellingOrder

    os.makedirs(directory, exist_ok=True)
    files = {
        "brodsky.json": io.configuration_to_json(brodsky()),
        "hyperelliptic.json": io.polynomial_to_json(hyperelliptic()),
        "projective.json": io.matrix_to_json(projective_example()),
        "counterlex.json": io.matrix_to_json(counterlex()),
        "partial-support.json": io.matrix_to_json(partial_support()),
        "hexagon-ray.json": io.polyhedron_to_json(hexagon_ray()),
        "brodsky-order.json": io.shelling_to_json(ShellingOrder(BRODSKY_ORDER, "brodsky.json#subdivision")),
        "lex-bounded.json": io.shelling_to_json(
            ShellingOrder(["112", "121", "211"], "counterlex.json#tropical-polytope", "lex-coarse")
        ),
        "brodsky-pinned-matching.json": io.matching_to_json(pinned_matching(), complex_ref="brodsky.json#subdivision-plus"),
    }
    written = []
    for name, data in files.items():
        path = os.path.join(directory, name)
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(io.dumps(data))
        written.append(path)
    return written


if __name__ == "__main__":
    for p in write_all(sys.argv[1] if len(sys.argv) > 1 else "fixtures"):
        print(p)
