import random

import pytest

from tropshell import fixtures
from tropshell.complex import (
    STAR,
    CellComplex,
    abstract_complex,
    boundary_complex,
    compactify,
    euler_characteristic,
    label_id,
    poset_isomorphic,
    pseudomanifold_check,
    simplex_boundary,
    skeleton,
)
from tropshell.errors import PreconditionError
from tropshell.kernel import Polyhedron


def test_label_id_joins():
    assert label_id(["7", "1", "5"]) == "157"
    assert label_id(["121", "112"]) == "112,121"
    assert label_id(["10", "2"]) == "2,10"


def test_simplex_boundary_counts():
    cx = simplex_boundary(4)
    assert cx.f_vector() == [4, 6, 4]
    assert euler_characteristic(cx) == 2
    assert pseudomanifold_check(cx).ok


def test_cube_boundary_is_sphere():
    cube = Polyhedron([(x, y, z) for x in (0, 1) for y in (0, 1) for z in (0, 1)])
    cx = boundary_complex(cube)
    assert cx.f_vector() == [8, 12, 6]
    assert euler_characteristic(cx) == 2
    rep = pseudomanifold_check(cx)
    assert rep.ok and not rep.boundary


def test_hexagon_ray_compactification():
    cx = compactify(boundary_complex(fixtures.hexagon_ray()))
    assert len(cx.maximal_cells()) == 7
    assert euler_characteristic(cx) == 2
    assert cx.star_id() == STAR
    assert pseudomanifold_check(cx).ok


def test_compactify_refuses_bounded_and_twice():
    cube = boundary_complex(Polyhedron([(0, 0), (1, 0), (0, 1)]))
    with pytest.raises(PreconditionError):
        compactify(cube)
    once = compactify(boundary_complex(fixtures.hexagon_ray()))
    with pytest.raises(PreconditionError):
        compactify(once)


def test_skeleton_keeps_low_cells():
    cx = boundary_complex(fixtures.hexagon_ray())
    sk = skeleton(cx, 1)
    assert sk.dim == 1
    assert sk.f_vector() == cx.f_vector()[:2]


def test_nonpure_detected():
    cx = abstract_complex(
        {"a": [], "b": [], "c": [], "d": [], "ab": ["a", "b"], "bc": ["b", "c"], "ac": ["a", "c"], "abc": ["ab", "bc", "ac"], "cd": ["c", "d"]},
        {"a": 0, "b": 0, "c": 0, "d": 0, "ab": 1, "bc": 1, "ac": 1, "abc": 2, "cd": 1},
    )
    assert not cx.is_pure()
    assert not pseudomanifold_check(cx).pure


def test_missing_boundary_is_rejected():
    from tropshell.complex import Cell

    with pytest.raises(PreconditionError):
        CellComplex([Cell("e", 1, boundary=frozenset({"x", "y"}))])


def test_isomorphism_under_relabelling():
    a = simplex_boundary(4)
    ids = [c.id for c in a]
    random.Random(0).shuffle(ids)
    renamed = {c.id: f"c{k}" for k, c in zip(ids, a)}
    b = a.relabel(renamed)
    res = poset_isomorphic(a, b)
    assert res.found
    assert all(b[res.mapping[x]].dim == a[x].dim for x in res.mapping)


def test_isomorphism_distinguishes():
    a = simplex_boundary(4)
    cube = boundary_complex(Polyhedron([(x, y, z) for x in (0, 1) for y in (0, 1) for z in (0, 1)]))
    assert not poset_isomorphic(a, cube).found


def test_hasse_digraph_edges_match_boundaries():
    cx = simplex_boundary(3)
    g = cx.hasse_digraph()
    assert g.number_of_edges() == sum(len(c.boundary) for c in cx)
