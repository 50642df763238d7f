"""Line shellings of unbounded polyhedra, and a tropical curve.

A hexagonal prism that runs off to infinity has six unbounded side facets
and one bounded bottom.  After adding a point at infinity its boundary is a
2-sphere with seven cells, and a line through the polyhedron orders them as
a shelling.

The hyperelliptic tropical polynomial has the Brodsky triangulation as its
dual subdivision.  Its curve is the 1-skeleton of the normal complex; the
script writes a drawing to $DEMO_OUT (default: the temp directory).
"""

import os
import tempfile

from tropshell import fixtures
from tropshell.complex import boundary_complex, compactify, euler_characteristic
from tropshell.shelling import normal_complex_shelling, polytope_boundary_order_complex, unbounded_line_shelling, verify_shelling
from tropshell.subdivision import normal_complex
from tropshell.svg import emit_svg
from tropshell.tropical import hypersurface


def prism():
    poly = fixtures.hexagon_ray()
    cx = compactify(boundary_complex(poly))
    print(f"compactified boundary: {len(cx.maximal_cells())} facets, Euler characteristic {euler_characteristic(cx)}")
    order = unbounded_line_shelling(poly)
    print("line order:", " | ".join(order.order))
    print("shelling:", bool(verify_shelling(polytope_boundary_order_complex(poly), order)))


def curve(out_dir):
    f = fixtures.hyperelliptic()
    nc = normal_complex(f.configuration())
    edges = nc.cells_of_dim(1)
    print(f"\ncurve: {len(nc.cells_of_dim(0))} vertices, {sum(e.bounded for e in edges)} bounded edges,"
          f" {sum(not e.bounded for e in edges)} rays")
    for vid, x in sorted(nc.vertex_coords.items()):
        print(f"    vertex dual to triangle {vid}: ({x[0]}, {x[1]})")
    hs = hypersurface(f)
    print("compactified curve f-vector:", hs.f_vector())
    order = normal_complex_shelling(f.configuration())
    print("regions of the plane, shelled upward:", " ".join(order.order))
    path = os.path.join(out_dir, "hyperelliptic.svg")
    emit_svg(nc, path)
    print("drawing written to", path)


if __name__ == "__main__":
    prism()
    curve(os.environ.get("DEMO_OUT", tempfile.gettempdir()))
