import random
from itertools import permutations

import pytest

from conftest import lower_cells_oracle, random_configuration
from tropshell import fixtures
from tropshell.complex import compactify, euler_characteristic
from tropshell.errors import PreconditionError
from tropshell.subdivision import (
    PointConfiguration,
    dome_faces,
    duality_map,
    interior_cells,
    normal_complex,
    regular_subdivision,
    sample_point,
    tight_span,
)


def _cells(sigma):
    return {frozenset(c) for c in sigma.maximal_cells()}


def _lower_triangle(lifted, tri):
    """Integer test: every lifted point lies on or above the plane through ``tri``."""
    (ax, ay, az), (bx, by, bz), (cx, cy, cz) = (lifted[i] for i in tri)
    ux, uy, uz = bx - ax, by - ay, bz - az
    vx, vy, vz = cx - ax, cy - ay, cz - az
    nx, ny, nz = uy * vz - uz * vy, uz * vx - ux * vz, ux * vy - uy * vx
    if nz == 0:
        return False
    if nz < 0:
        nx, ny, nz = -nx, -ny, -nz
    return all(nx * (x - ax) + ny * (y - ay) + nz * (z - az) >= 0 for x, y, z in lifted)


def test_brodsky_labelling_is_forced():
    """Exactly one assignment of the labels 1..7 to the lattice points makes
    each listed triangle a lower facet under the given weight vector."""
    tris = [tuple(int(c) - 1 for c in t) for t in fixtures.BRODSKY_TRIANGLES]
    pts = fixtures.BRODSKY_POINTS
    w = fixtures.BRODSKY_WEIGHTS
    hits = []
    for perm in permutations(range(7)):
        # label i+1 sits on pts[perm[i]] and carries weight w[i]
        lifted = [pts[perm[i]] + (w[i],) for i in range(7)]
        if all(_lower_triangle(lifted, t) for t in tris):
            hits.append(perm)
    assert hits == [tuple(range(7))]
    # with seven unit triangles covering the area-7/2 quadrilateral, those facets are all of them
    cfg = PointConfiguration(pts, w)
    assert lower_cells_oracle(cfg) == {frozenset(t) for t in fixtures.BRODSKY_TRIANGLES}


def test_brodsky_triangles():
    sigma = regular_subdivision(fixtures.brodsky())
    assert sorted(sigma.maximal_cells()) == sorted(fixtures.BRODSKY_TRIANGLES)
    assert euler_characteristic(sigma) == 1


@pytest.mark.parametrize("seed", range(40))
def test_subdivision_matches_determinant_oracle(seed):
    rng = random.Random(seed)
    cfg = random_configuration(rng, rng.choice([2, 2, 3]))
    sigma = regular_subdivision(cfg)
    assert _cells(sigma) == lower_cells_oracle(cfg)
    assert euler_characteristic(sigma) == 1


@pytest.mark.parametrize("seed", range(25))
def test_normal_complex_cells_are_argmin_regions(seed):
    rng = random.Random(100 + seed)
    cfg = random_configuration(rng, rng.choice([2, 3]))
    nc = normal_complex(cfg)
    sigma = regular_subdivision(cfg)
    assert set(nc.cells) == set(sigma.cells)
    for c in nc:
        assert c.dim + sigma[c.id].dim == cfg.dim
        _, arg = cfg.evaluate(sample_point(nc, c.id))
        assert arg == frozenset(c.id)


@pytest.mark.parametrize("seed", range(15))
def test_tight_span_is_dual_to_interior(seed):
    rng = random.Random(200 + seed)
    cfg = random_configuration(rng, rng.choice([2, 3]))
    ts = tight_span(cfg)
    sigma = regular_subdivision(cfg)
    assert set(ts.cells) == set(interior_cells(sigma))
    assert all(c.bounded for c in ts)


@pytest.mark.parametrize("seed", range(15))
def test_compactified_normal_complex_is_sphere(seed):
    rng = random.Random(300 + seed)
    d = rng.choice([2, 3])
    cfg = random_configuration(rng, d)
    nc = compactify(normal_complex(cfg))
    assert euler_characteristic(nc) == 1 + (-1) ** d


def test_duality_map_is_identity_on_ids():
    cfg = fixtures.brodsky()
    dm = duality_map(cfg)
    assert len(dm) == len(dome_faces(cfg))
    for k, v in dm.pairs.items():
        assert k == v
        assert dm.dome_dims[k] + dm.subdivision_dims[v] == 2


def test_brodsky_tight_span_shape():
    ts = tight_span(fixtures.brodsky())
    assert ts.dim == 2
    assert not ts.is_pure()


def test_bad_configurations():
    with pytest.raises(PreconditionError):
        PointConfiguration([(0, 0), (1, 0)], [0])
    with pytest.raises(PreconditionError):
        PointConfiguration([(0, 0), (0, 0), (1, 1)], [0, 1, 2])
