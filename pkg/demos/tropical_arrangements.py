"""Covector decompositions of three small tropical point sets.

1. Four points whose tropical polytope has three bounded cells.  Taking
   them in lex order of coarse types is not a shelling of the polytope on
   its own, but the lex order of the whole compactified decomposition is.
2. A generic-looking matrix with 2 bounded and 12 unbounded regions, whose
   closure in tropical projective space matches the Schlegel diagram of the
   dome.
3. A matrix with -inf entries, where the face at infinity is a quadrangle
   rather than a triangle, so that comparison breaks down.
"""

from tropshell import fixtures
from tropshell.complex import compactify
from tropshell.errors import PreconditionError
from tropshell.shelling import lex_coarse_type_shelling, lex_line_order, verify_shelling
from tropshell.tropical import (
    covector_decomposition,
    face_at_infinity,
    maximal_coarse_types,
    projective_covector_complex,
    projective_isomorphism,
    tropical_polytope,
)


def show(v):
    for r in v.rows:
        print("   ", " ".join(f"{'-inf' if x is None else str(x):>4}" for x in r))


def part_one():
    v = fixtures.counterlex()
    print("matrix:")
    show(v)
    cx = covector_decomposition(v)
    types = maximal_coarse_types(v, cx)
    bounded = sorted(c for c in types if cx[c].bounded)
    print("bounded regions by coarse type:", bounded)
    tp = tropical_polytope(v)
    rep = verify_shelling(tp, bounded)
    print(f"lex order of the bounded cells alone: fails {rep.condition} at {rep.cell} ({rep.message})")
    print("reordered 112, 211, 121:", "valid" if verify_shelling(tp, ["112", "211", "121"]) else "invalid")
    order = lex_coarse_type_shelling(v)
    ok = verify_shelling(compactify(cx), order)
    print(f"lex order of all {len(order)} regions, compactified:", "valid" if ok else "invalid")
    print("the same order read off a line through the dome:", lex_line_order(v) == order.order)


def part_two():
    v = fixtures.projective_example()
    print("\nmatrix:")
    show(v)
    cx = covector_decomposition(v)
    maximal = cx.maximal_cells()
    nb = sum(cx[c].bounded for c in maximal)
    print(f"{nb} bounded and {len(maximal) - nb} unbounded regions")
    pcx = projective_covector_complex(v)
    print(f"projective closure: f-vector {pcx.f_vector()}")
    iso = projective_isomorphism(v)
    print("isomorphic to the Schlegel diagram of the dome:", iso.found)
    for k in sorted(x for x in iso.mapping if x.startswith("Z")):
        print(f"    stratum {k} -> {iso.mapping[k]}")


def part_three():
    v = fixtures.partial_support()
    print("\nmatrix:")
    show(v)
    cx = covector_decomposition(v)
    print(sum(not cx[c].bounded for c in cx.maximal_cells()), "unbounded regions")
    fai = face_at_infinity(v)
    print(f"face at infinity: {fai.n_vertices} vertices in dimension {fai.dim}, simplex: {fai.is_simplex}")
    try:
        projective_covector_complex(v)
    except PreconditionError as exc:
        print("projective closure refused:", exc)


if __name__ == "__main__":
    part_one()
    part_two()
    part_three()
