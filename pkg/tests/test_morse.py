import random
from graphlib import CycleError, TopologicalSorter

import pytest

from conftest import random_configuration
from tropshell import fixtures
from tropshell.complex import boundary_subcomplex_ids, compactify, simplex_boundary
from tropshell.errors import BudgetExceededError, PreconditionError
from tropshell.morse import (
    DELTA,
    AcyclicMatching,
    brute_force_collapse,
    dual_complex,
    dualize_matching,
    matching_from_shelling,
    sphere_extension,
    tight_span_collapsibility,
    verify_matching,
)
from tropshell.shelling import normal_complex_shelling, subdivision_shelling
from tropshell.subdivision import normal_complex, regular_subdivision, tight_span


def acyclic_oracle(cx, m):
    """Topological sort of the modified Hasse diagram with the stdlib sorter."""
    matched = set(m.pairs)
    preds = {c.id: set() for c in cx}
    for c in cx:
        for f in c.boundary:
            if (f, c.id) in matched:
                preds[f].add(c.id)  # reversed arc c -> f
            else:
                preds[c.id].add(f)
    try:
        tuple(TopologicalSorter(preds).static_order())
    except CycleError:
        return False
    return True


def test_cycle_is_detected():
    circle = simplex_boundary(3)
    m = AcyclicMatching.from_pairs(circle, [("1", "12"), ("2", "23"), ("3", "13")])
    rep = verify_matching(circle, m)
    assert not rep.valid and rep.cycle
    assert not acyclic_oracle(circle, m)


def test_double_match_and_non_hasse_pair():
    circle = simplex_boundary(3)
    m = AcyclicMatching.from_pairs(circle, [("1", "12"), ("1", "13")])
    assert not verify_matching(circle, m).valid
    with pytest.raises(PreconditionError):
        verify_matching(circle, AcyclicMatching.from_pairs(circle, [("3", "12")]))


def test_circle_does_not_collapse():
    assert brute_force_collapse(simplex_boundary(3)) is None


def test_brute_force_budget():
    with pytest.raises(BudgetExceededError):
        brute_force_collapse(tight_span(fixtures.brodsky()), max_cells=5)


def test_dualize_twice_is_identity():
    sigma = regular_subdivision(fixtures.brodsky())
    mu = matching_from_shelling(sigma, fixtures.BRODSKY_ORDER)
    assert dualize_matching(dualize_matching(mu)) == mu


def test_dual_of_sphere_is_sphere():
    plus = sphere_extension(regular_subdivision(fixtures.brodsky()))
    dual = dual_complex(plus)
    assert dual.f_vector() == plus.f_vector()[::-1]
    back = dual_complex(dual)
    assert {c.id: (c.dim, c.boundary) for c in back} == {c.id: (c.dim, c.boundary) for c in plus}


def test_pinned_matching():
    m = fixtures.pinned_matching()
    plus = sphere_extension(regular_subdivision(fixtures.brodsky()))
    rep = verify_matching(plus, m)
    assert rep.valid and rep.euler_identity
    assert m.critical == {"4", DELTA}
    assert ("17", "157") in m.pairs
    assert acyclic_oracle(plus, m)


def test_brodsky_certificate():
    cert = tight_span_collapsibility(fixtures.brodsky())
    ts = tight_span(fixtures.brodsky())
    assert verify_matching(ts, cert.matching).valid
    assert cert.provenance["method"] == "shelling"
    assert (cert.provenance["alpha"], cert.provenance["beta"], cert.provenance["gamma"]) == ("2", "67", "567")
    assert cert.critical_vertex == "567"


def _configs(seed, count):
    rng = random.Random(seed)
    return [random_configuration(rng, rng.choice([2, 3])) for _ in range(count)]


@pytest.mark.parametrize("cfg", _configs(500, 15), ids=repr)
def test_ball_matchings(cfg):
    sigma = regular_subdivision(cfg)
    order = subdivision_shelling(cfg)
    mu = matching_from_shelling(sigma, order.order)
    assert verify_matching(sigma, mu).valid and acyclic_oracle(sigma, mu)
    (c,) = mu.critical
    assert sigma[c].dim == 0
    if len(sigma.maximal_cells()) > 1:
        mb = matching_from_shelling(sigma, order.order, restrict_boundary=True)
        assert verify_matching(sigma, mb).valid
        bd = boundary_subcomplex_ids(sigma)
        on_bd = mb.restrict(sigma, bd)
        assert len(on_bd.critical) == 2
        assert next(iter(mb.critical)) in bd


@pytest.mark.parametrize("cfg", _configs(600, 10), ids=repr)
def test_sphere_matchings(cfg):
    nc = compactify(normal_complex(cfg))
    order = normal_complex_shelling(cfg)
    mu = matching_from_shelling(nc, order.order, "sphere")
    assert verify_matching(nc, mu).valid and acyclic_oracle(nc, mu)
    assert sorted(nc[c].dim for c in mu.critical) == [0, cfg.dim]


@pytest.mark.parametrize("cfg", _configs(700, 10), ids=repr)
def test_tight_span_certificates(cfg):
    cert = tight_span_collapsibility(cfg)
    ts = tight_span(cfg)
    assert verify_matching(ts, cert.matching).valid
    assert acyclic_oracle(ts, cert.matching)
    assert cert.matching.critical == {cert.critical_vertex}
    if len(ts) <= 25:
        assert brute_force_collapse(ts) is not None
