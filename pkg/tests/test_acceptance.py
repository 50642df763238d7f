"""Acceptance criteria 1-9, each timed against its limit.

Every test records its verdict in ``conftest.ACCEPTANCE``; the terminal
summary prints one line per criterion.
"""

import random
import time
from contextlib import contextmanager

import pytest

from conftest import ACCEPTANCE, SEED, random_configuration, random_matrix
from test_morse import acyclic_oracle
from test_tropical import _region
from tropshell import fixtures
from tropshell.complex import boundary_complex, compactify, euler_characteristic, skeleton
from tropshell.errors import PreconditionError
from tropshell.kernel import primitive
from tropshell.morse import brute_force_collapse, matching_from_shelling, tight_span_collapsibility, verify_matching
from tropshell.shelling import (
    brute_force_shellability,
    lex_coarse_type_shelling,
    normal_complex_shelling,
    polytope_boundary_order_complex,
    subdivision_shelling,
    unbounded_line_shelling,
    verify_shelling,
)
from tropshell.subdivision import normal_complex, regular_subdivision, tight_span
from tropshell.tropical import (
    arrangement_polynomial,
    covector_cell,
    covector_decomposition,
    covector_labels,
    face_at_infinity,
    homogeneous_quotient,
    hypersurface,
    maximal_coarse_types,
    projective_covector_complex,
    projective_isomorphism,
    tropical_polytope,
)

INSTANCES = 50


@contextmanager
def criterion(k, limit, note=""):
    start = time.perf_counter()
    try:
        yield
    except BaseException:
        ACCEPTANCE[k] = (False, time.perf_counter() - start, note or "assertion failed")
        raise
    secs = time.perf_counter() - start
    ok = secs < limit
    ACCEPTANCE[k] = (ok, secs, note if ok else f"over the {limit} s limit")
    assert ok, f"criterion {k} took {secs:.2f} s (limit {limit} s)"


def test_criterion_1_brodsky_subdivision():
    with criterion(1, 1.0):
        sigma = regular_subdivision(fixtures.brodsky())
        assert sorted(sigma.maximal_cells()) == sorted(["123", "234", "346", "136", "156", "157", "567"])


def test_criterion_2_brodsky_shelling():
    with criterion(2, 1.0):
        cfg = fixtures.brodsky()
        sigma = regular_subdivision(cfg)
        assert verify_shelling(sigma, ["123", "234", "346", "136", "156", "157", "567"]).valid
        order = subdivision_shelling(cfg, first="123")
        assert order.order[0] == "123"
        assert verify_shelling(sigma, order).valid


def test_criterion_3_brodsky_tight_span():
    with criterion(3, 30.0):
        cfg = fixtures.brodsky()
        ts = tight_span(cfg)
        assert ts.dim == 2 and not ts.is_pure()
        res = brute_force_shellability(ts)
        assert res.exhausted and res.order is None
        m = brute_force_collapse(ts)
        assert m is not None and verify_matching(ts, m).valid and len(m.critical) == 1
        assert ts[next(iter(m.critical))].dim == 0
        cert = tight_span_collapsibility(cfg)
        assert verify_matching(ts, cert.matching).valid
        assert cert.matching.critical == {cert.critical_vertex}
        assert ts[cert.critical_vertex].dim == 0


def test_criterion_4_counterlex():
    with criterion(4, 5.0):
        v = fixtures.counterlex()
        cx = covector_decomposition(v)
        types = maximal_coarse_types(v, cx)
        bounded = {types[c] for c in types if cx[c].bounded}
        assert bounded == {(1, 1, 2), (1, 2, 1), (2, 1, 1)}
        tp = tropical_polytope(v)
        assert not verify_shelling(tp, ["112", "121", "211"]).valid
        assert verify_shelling(tp, ["112", "211", "121"]).valid
        order = lex_coarse_type_shelling(v)
        assert verify_shelling(compactify(cx), order).valid


def test_criterion_5_projective_example():
    with criterion(5, 10.0):
        v = fixtures.projective_example()
        cx = covector_decomposition(v)
        maximal = cx.maximal_cells()
        assert sum(cx[c].bounded for c in maximal) == 2
        assert sum(not cx[c].bounded for c in maximal) == 12
        iso = projective_isomorphism(v)
        assert iso.found


def test_criterion_6_partial_support():
    with criterion(6, 5.0):
        v = fixtures.partial_support()
        cx = covector_decomposition(v)
        assert sum(not cx[c].bounded for c in cx.maximal_cells()) == 6
        fai = face_at_infinity(v)
        assert fai.n_vertices == 4 and fai.dim == 2 and not fai.is_simplex
        with pytest.raises(PreconditionError, match="full support"):
            projective_covector_complex(v)


def test_criterion_7_hexagon_ray():
    with criterion(7, 1.0):
        poly = fixtures.hexagon_ray()
        cx = compactify(boundary_complex(poly))
        assert len(cx.maximal_cells()) == 7
        assert euler_characteristic(cx) == 2
        order = unbounded_line_shelling(poly)
        assert verify_shelling(polytope_boundary_order_complex(poly), order).valid


def test_criterion_8_hyperelliptic():
    with criterion(8, 10.0):
        f = fixtures.hyperelliptic()
        cfg = f.configuration()
        sigma = regular_subdivision(cfg)
        assert sigma == regular_subdivision(fixtures.brodsky())
        # interior edges of the triangulation are dual to bounded edges,
        # boundary edges to rays
        edges = sigma.cells_of_dim(1)
        interior = [e for e in edges if len(sigma.coboundary[e.id]) == 2]
        nc = normal_complex(cfg)
        assert len(nc.cells_of_dim(0)) == len(sigma.maximal_cells()) == 7
        assert sum(c.bounded for c in nc.cells_of_dim(1)) == len(interior) == 8
        assert sum(not c.bounded for c in nc.cells_of_dim(1)) == len(edges) - len(interior) == 5
        ncc = compactify(nc)
        assert hypersurface(f) == skeleton(ncc, 1)
        assert verify_shelling(ncc, normal_complex_shelling(cfg)).valid


# -- criterion 9: property suites ----------------------------------------------

SUITES: dict = {}


def _suite(name):
    def wrap(fn):
        SUITES[name] = fn
        return fn

    return wrap


def _configs(tag):
    rng = random.Random(f"{SEED}-{tag}")
    return [random_configuration(rng, rng.choice([2, 3]), n_max=8) for _ in range(INSTANCES)]


def _matrices(tag, nmax=4):
    rng = random.Random(f"{SEED}-{tag}")
    return [random_matrix(rng, rng.choice([2, 3]), rng.randint(1, nmax)) for _ in range(INSTANCES)]


@_suite("a")
def suite_shellings():
    for cfg in _configs("a"):
        sigma = regular_subdivision(cfg)
        assert verify_shelling(sigma, subdivision_shelling(cfg)).valid
        assert verify_shelling(compactify(normal_complex(cfg)), normal_complex_shelling(cfg)).valid
    for v in _matrices("a-lex"):
        assert verify_shelling(compactify(covector_decomposition(v)), lex_coarse_type_shelling(v)).valid


@_suite("b")
def suite_critical_counts():
    for cfg in _configs("b"):
        sigma = regular_subdivision(cfg)
        ball = matching_from_shelling(sigma, subdivision_shelling(cfg).order, "ball")
        assert verify_matching(sigma, ball).valid and acyclic_oracle(sigma, ball)
        assert len(ball.critical) == 1
        nc = compactify(normal_complex(cfg))
        sphere = matching_from_shelling(nc, normal_complex_shelling(cfg).order, "sphere")
        assert verify_matching(nc, sphere).valid and acyclic_oracle(nc, sphere)
        assert len(sphere.critical) == 2


@_suite("c")
def suite_certificates():
    compared = 0
    for cfg in _configs("c"):
        ts = tight_span(cfg)
        cert = tight_span_collapsibility(cfg)
        assert cert.provenance["method"] in ("shelling", "trivial")
        assert verify_matching(ts, cert.matching).valid
        assert cert.matching.critical == {cert.critical_vertex}
        if len(ts) <= 25:
            assert brute_force_collapse(ts) is not None
            compared += 1
    assert compared >= INSTANCES // 2


@_suite("d")
def suite_lattice_and_boundedness():
    for v in _matrices("d"):
        cx = covector_decomposition(v)
        labels = covector_labels(v, cx)
        regions = {}

        def region(h):
            if h not in regions:
                p = covector_cell(v, h)
                regions[h] = None if p is None else _region(p)
            return regions[h]

        for a in labels:
            assert cx[a].bounded == all(labels[a])
            for b in labels:
                union = tuple(x | y for x, y in zip(labels[a], labels[b]))
                common = cx.closure(a) & cx.closure(b)
                if not common:
                    assert region(union) is None
                else:
                    top = max(common, key=lambda c: cx[c].dim)
                    assert region(union) == region(labels[top])


@_suite("e")
def suite_covdec_is_normal_complex():
    for v in _matrices("e"):
        cx = covector_decomposition(v)
        assert cx == normal_complex(homogeneous_quotient(arrangement_polynomial(v)).configuration())
        for c, h in covector_labels(v, cx).items():
            p = covector_cell(v, h)
            assert p.dim == cx[c].dim
            assert set(p.points) == {cx.vertex_coords[x] for x in cx.closure_vertices(c) if x in cx.vertex_coords}
            rays = set()
            for b in cx.closure(c):
                rays |= cx[b].rays
            assert {primitive(r) for r in p.rays} == {primitive(cx.ray_dirs[r]) for r in rays}


def test_criterion_9_property_suites():
    failures = []
    with criterion(9, 300.0, f"5 suites x {INSTANCES} instances"):
        for name, fn in SUITES.items():
            try:
                fn()
            except AssertionError as exc:
                failures.append(f"({name}) {exc}")
        assert not failures, "; ".join(failures)
