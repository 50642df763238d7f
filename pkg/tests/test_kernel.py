import random
from fractions import Fraction

import numpy as np
import pytest
from scipy.spatial import ConvexHull

from tropshell.errors import NotPointedError, PreconditionError
from tropshell.kernel import (
    EpsRatio,
    EpsVector,
    Halfspace,
    Polyhedron,
    det,
    lower_facets,
    nullspace,
    primitive,
    rank,
    solve,
    vertex_ray_enumerate,
)


def _hull_facets(points):
    """Facet normals from qhull, merged across its triangulated output."""
    hull = ConvexHull(np.array(points, dtype=float))
    seen = set()
    for eq in hull.equations:
        seen.add(tuple(np.round(eq / np.linalg.norm(eq[:-1]), 6)))
    return len(seen)


def test_det_matches_numpy():
    rng = random.Random(3)
    for _ in range(40):
        n = rng.randint(1, 5)
        m = [[rng.randint(-5, 5) for _ in range(n)] for _ in range(n)]
        assert float(det(m)) == pytest.approx(np.linalg.det(np.array(m, dtype=float)), abs=1e-6)


def test_det_is_exact():
    assert det([[Fraction(1, 3), 1], [1, 3]]) == 0


def test_solve_and_nullspace():
    assert solve([[1, 1], [1, -1]], [3, 1]) == (2, 1)
    assert solve([[1, 1], [2, 2]], [1, 3]) is None
    (n,) = nullspace([[1, 1, 1]], 3)[:1] or [None]
    assert n is not None and sum(n) == 0
    assert rank([[1, 2], [2, 4]]) == 1


def test_primitive_scales_to_coprime_integers():
    assert primitive((Fraction(2, 3), Fraction(4, 3))) == (1, 2)
    assert primitive((0, -6, 9)) == (0, -2, 3)


@pytest.mark.parametrize("seed", range(15))
def test_facet_count_matches_qhull(seed):
    rng = random.Random(seed)
    pts = {tuple(rng.randint(-4, 4) for _ in range(3)) for _ in range(12)}
    pts = sorted(pts)
    poly = Polyhedron(pts)
    if poly.dim < 3:
        pytest.skip("degenerate sample")
    assert len(poly.facets) == _hull_facets(pts)
    for h, gens in poly.facets:
        assert all(h.contains(p) for p in poly.points)
        assert all(h.is_tight(poly.points[i]) for i in gens)


def test_cube_face_lattice():
    cube = Polyhedron([(x, y, z) for x in (0, 1) for y in (0, 1) for z in (0, 1)])
    counts = [sum(1 for f in cube.faces if f.dim == k) for k in range(4)]
    assert counts == [8, 12, 6, 1]


def test_vertex_ray_roundtrip():
    poly = Polyhedron([(0, 0), (2, 0), (0, 1)], [(1, 1)])
    verts, rays = vertex_ray_enumerate(poly.inequalities)
    assert sorted(verts) == [(0, 0), (0, 1), (2, 0)]
    assert rays and all(r in [(1, 1), (1, 0), (0, 1)] for r in rays)
    back = Polyhedron(verts, rays)
    assert all(back.contains(p) for p in [(5, 5), (3, 1), (1, Fraction(1, 2))])
    assert not back.contains((-1, 0))


def test_not_pointed_is_refused():
    with pytest.raises(NotPointedError):
        vertex_ray_enumerate([Halfspace((Fraction(1), Fraction(0)), Fraction(0))])


def test_empty_h_representation():
    hs = [Halfspace((Fraction(1),), Fraction(1)), Halfspace((Fraction(-1),), Fraction(0))]
    assert vertex_ray_enumerate(hs) == ([], [])
    assert Polyhedron.from_inequalities(hs) is None


def test_lower_facets_of_square_with_bump():
    lifted = [(0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 1)]
    facets = {f for f, _ in lower_facets(lifted)}
    assert facets == {frozenset({0, 1, 2}), frozenset({1, 2, 3})}


def test_zero_halfspace_rejected():
    with pytest.raises(PreconditionError):
        Halfspace((Fraction(0),), Fraction(1))


@pytest.mark.parametrize("seed", range(10))
def test_eps_sign_agrees_with_small_evaluation(seed):
    rng = random.Random(seed)
    a = EpsVector(tuple(Fraction(rng.randint(-3, 3)) for _ in range(4)))
    b = EpsVector(tuple(Fraction(rng.randint(-3, 3)) for _ in range(4)))
    eps = Fraction(1, 10**6)
    for v in (a, b, a + b, a - b, a * b):
        val = v.evaluate(eps)
        assert v.sign() == (val > 0) - (val < 0)
    if not b.is_zero():
        r = EpsRatio(a, b)
        val = r.evaluate(eps)
        assert r.sign() == (val > 0) - (val < 0)
