"""A triangulation that shells, and its tight span that does not.

Seven lattice points of a quadrilateral, lifted by integer weights, give a
regular triangulation with seven triangles.  A descending near-vertical line
shells it.  The dual tight span is two-dimensional but nonpure, and an
exhaustive search shows it has no shelling at all.  It is still collapsible,
and the shelling of the triangulation tells us how to collapse it.
"""

from tropshell import fixtures
from tropshell.morse import tight_span_collapsibility, verify_matching
from tropshell.shelling import brute_force_shellability, subdivision_shelling, verify_shelling
from tropshell.subdivision import regular_subdivision, tight_span


def main():
    cfg = fixtures.brodsky()
    for lab, p, h in zip(cfg.labels, cfg.points, cfg.heights):
        print(f"  point {lab}: {tuple(int(c) for c in p)} at height {h}")

    sigma = regular_subdivision(cfg)
    print("\ntriangles:", " ".join(sorted(sigma.maximal_cells())))

    order = subdivision_shelling(cfg, first="123")
    print("line shelling:", " ".join(order.order), "->", "valid" if verify_shelling(sigma, order) else "invalid")

    ts = tight_span(cfg)
    kinds = sorted({ts[c].dim for c in ts.maximal_cells()})
    print(f"\ntight span: f-vector {ts.f_vector()}, maximal cells of dimensions {kinds}")
    res = brute_force_shellability(ts)
    print(f"exhaustive shelling search visited {res.states} placed sets:",
          "shellable" if res.shellable else "no shelling exists")

    cert = tight_span_collapsibility(cfg)
    prov = cert.provenance
    print(f"\ncollapse built from the shelling ({prov['method']}):")
    print(f"  critical vertex of the ball matching: {prov['alpha']}")
    print(f"  boundary edge {prov['beta']} matched into triangle {prov['gamma']}")
    print(f"  tight span collapses onto vertex {cert.critical_vertex};",
          "matching verified" if verify_matching(ts, cert.matching) else "matching rejected")
    print("  pairs, named by the dual cells of the triangulation:")
    for low, high in sorted(cert.matching.pairs, key=lambda p: (ts[p[0]].dim, p)):
        print(f"    {ts[low].dim}-cell {low:<4} matched with {ts[high].dim}-cell {high}")


if __name__ == "__main__":
    main()
