import random
from fractions import Fraction
from itertools import product
from math import comb

import pytest

from conftest import random_matrix
from tropshell import fixtures
from tropshell.complex import compactify, euler_characteristic, skeleton
from tropshell.errors import PreconditionError
from tropshell.kernel import primitive
from tropshell.shelling import lex_coarse_type_shelling, lex_line_order, verify_shelling
from tropshell.subdivision import normal_complex, sample_point
from tropshell.tropical import (
    TropicalMatrix,
    TropicalPolynomial,
    _closure_stratum_of,
    arrangement_polynomial,
    cell_closure,
    coarse_type,
    covector,
    covector_cell,
    covector_decomposition,
    covector_labels,
    evaluate,
    exponent_label,
    face_at_infinity,
    homogeneous_quotient,
    hypersurface,
    lift_point,
    maximal_coarse_types,
    projective_covector_complex,
    tropically_generic,
)


def _matrices(seed, count, dims=(2, 3), nmax=4):
    rng = random.Random(seed)
    for _ in range(count):
        d = rng.choice(dims)
        yield random_matrix(rng, d, rng.randint(1, nmax))


def full_dim_covectors(v):
    """Covectors of the open full-dimensional regions, by trying every
    assignment of columns to rows."""
    out = set()
    for rows in product(range(v.d), repeat=v.n):
        h = [set() for _ in range(v.d)]
        for j, i in enumerate(rows):
            h[i].add(j + 1)
        h = tuple(frozenset(s) for s in h)
        p = covector_cell(v, h)
        if p is not None and p.dim == v.d - 1:
            out.add(h)
    return out


def _region(p):
    return frozenset(p.points), frozenset(primitive(r) for r in p.rays)


def test_exponent_labels():
    assert exponent_label((1, 1, 2)) == "112"
    assert exponent_label((10, 0)) == "10.0"


def test_tropical_product_evaluates_as_sum():
    rng = random.Random(1)
    f = TropicalPolynomial({(0, 0): 1, (1, 0): 0, (0, 1): 2})
    g = TropicalPolynomial({(1, 1): -1, (2, 0): 3})
    for _ in range(20):
        x = (Fraction(rng.randint(-9, 9), 3), Fraction(rng.randint(-9, 9), 3))
        assert evaluate(f * g, x)[0] == evaluate(f, x)[0] + evaluate(g, x)[0]


def test_quotient_needs_homogeneous():
    with pytest.raises(PreconditionError):
        homogeneous_quotient(TropicalPolynomial({(0, 0): 0, (1, 0): 0}))


def test_matrix_with_dead_column():
    with pytest.raises(PreconditionError):
        TropicalMatrix([["-inf", 0], ["-inf", 1]])


def test_hyperelliptic_dual_is_brodsky():
    from tropshell.subdivision import regular_subdivision

    f = fixtures.hyperelliptic()
    assert regular_subdivision(f.configuration()) == regular_subdivision(fixtures.brodsky())
    hs = hypersurface(f)
    nc = compactify(normal_complex(f.configuration()))
    assert hs == skeleton(nc, 1)


def test_hypersurface_points_have_double_minimum():
    f = fixtures.hyperelliptic()
    nc = normal_complex(f.configuration())
    for c in nc:
        _, arg = evaluate(f, sample_point(nc, c.id))
        assert (len(arg) >= 2) == (c.dim <= 1)


@pytest.mark.parametrize("v", list(_matrices(7, 25)), ids=lambda v: repr(v))
def test_covdec_maximal_cells_match_assignment_oracle(v):
    cx = covector_decomposition(v)
    labels = covector_labels(v, cx)
    got = {labels[c] for c in cx.maximal_cells()}
    assert got == full_dim_covectors(v)
    types = maximal_coarse_types(v, cx)
    assert all(exponent_label(coarse_type(labels[c])) == c for c in types)


@pytest.mark.parametrize("v", list(_matrices(11, 20)), ids=lambda v: repr(v))
def test_covdec_cells_are_covector_regions(v):
    cx = covector_decomposition(v)
    for c, h in covector_labels(v, cx).items():
        p = covector_cell(v, h)
        assert p is not None and p.dim == cx[c].dim
        verts = {cx.vertex_coords[x] for x in cx.closure_vertices(c) if x in cx.vertex_coords}
        assert set(p.points) == verts
        rays = set()
        for b in cx.closure(c):
            rays |= cx[b].rays
        assert {primitive(r) for r in p.rays} == {primitive(cx.ray_dirs[r]) for r in rays}
        # boundedness: every row owns at least one column
        assert cx[c].bounded == all(h)


@pytest.mark.parametrize("v", list(_matrices(13, 15)), ids=lambda v: repr(v))
def test_covector_lattice_law(v):
    cx = covector_decomposition(v)
    labels = covector_labels(v, cx)
    ids = sorted(labels)
    cache = {}

    def region(h):
        if h not in cache:
            p = covector_cell(v, h)
            cache[h] = None if p is None else _region(p)
        return cache[h]

    for a in ids:
        for b in ids:
            common = cx.closure(a) & cx.closure(b)
            union = tuple(x | y for x, y in zip(labels[a], labels[b]))
            if not common:
                assert region(union) is None
                continue
            top = max(common, key=lambda c: cx[c].dim)
            assert all(c in cx.closure(top) for c in common)
            # X_G cap X_H = X_{G u H}: the same region as the closure of the common face
            assert all(x >= y for x, y in zip(labels[top], union))
            assert region(union) == region(labels[top])


def test_generic_matrices_realise_every_coarse_type():
    seen = 0
    for v in _matrices(17, 40):
        if v.n < 2 or not tropically_generic(v):
            continue
        seen += 1
        cx = covector_decomposition(v)
        assert len(cx.maximal_cells()) == comb(v.n + v.d - 1, v.d - 1)
    assert seen >= 10


def test_counterlex_and_projective_example_are_not_generic():
    assert not tropically_generic(fixtures.counterlex())
    assert not tropically_generic(fixtures.projective_example())


@pytest.mark.parametrize("v", list(_matrices(19, 30, dims=(3,))), ids=lambda v: repr(v))
def test_lex_line_reproduces_lex_order(v):
    order = lex_coarse_type_shelling(v)
    assert lex_line_order(v) == order.order
    assert verify_shelling(compactify(covector_decomposition(v)), order).valid


def test_projective_single_point():
    v = TropicalMatrix([[0], [1], [3]])
    pcx = projective_covector_complex(v)
    assert pcx.f_vector() == [4, 6, 3]
    assert euler_characteristic(pcx) == 1


@pytest.mark.parametrize("v", list(_matrices(23, 12, dims=(3,))), ids=lambda v: repr(v))
def test_cell_closure_matches_rays(v):
    cx = covector_decomposition(v)
    for cid in cx.maximal_cells():
        strata = cell_closure(v, cid, cx)
        ray_z = _closure_stratum_of(cx, cid, v.d)
        if not strata:
            assert ray_z is None
        else:
            assert strata[0].z == ray_z
            assert all(s.z >= ray_z for s in strata)


def test_partial_support_refused_with_hint():
    v = fixtures.partial_support()
    with pytest.raises(PreconditionError, match="face_at_infinity"):
        projective_covector_complex(v)
    fai = face_at_infinity(v)
    assert fai.n_vertices == 4 and not fai.is_simplex


def test_covector_definition_on_a_point():
    v = fixtures.projective_example()
    cov = covector(v, lift_point((Fraction(1), Fraction(0))))
    # column 1 is all zeros: x - v = (0, 1, 0), min attained at rows 1 and 3
    assert 1 in cov[0] and 1 in cov[2] and 1 not in cov[1]


def test_arrangement_polynomial_degree():
    v = fixtures.projective_example()
    assert arrangement_polynomial(v).homogeneous_degree == v.n
