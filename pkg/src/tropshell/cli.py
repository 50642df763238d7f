"""Command-line interface.

Exit status: 0 on success, 1 when a verification fails or a search finds
nothing, 2 for unreadable input, 3 when an input violates a precondition.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import io
from .complex import compactify
from .errors import BudgetExceededError, PreconditionError, TropshellError

EXIT_FAIL, EXIT_PARSE, EXIT_PRECONDITION = 1, 2, 3


class _Job:
    """Where results go, and how references in them should be written."""

    def __init__(self, args):
        self.args = args
        self.output = getattr(args, "output", None)

    def ref_to(self, path: str, fragment: str) -> str:
        base = os.path.dirname(os.path.abspath(self.output)) if self.output else os.getcwd()
        rel = os.path.relpath(os.path.abspath(path), base)
        return rel + fragment

    def emit(self, data: dict) -> None:
        text = io.dumps(data)
        if self.output:
            with open(self.output, "w", encoding="utf-8") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)

    def emit_complex(self, cx) -> None:
        svg = getattr(self.args, "svg", None)
        if svg:
            from .svg import emit_svg

            emit_svg(cx, svg)
        self.emit(io.complex_to_json(cx))


def _load(path: str, *kinds: str):
    kind, obj = io.load(path)
    if kinds and kind not in kinds:
        raise PreconditionError(f"{path}: expected {' or '.join(kinds)}, found {kind}")
    return kind, obj


def _complex_arg(spec: str):
    """``file`` or ``file#kind``, relative to the working directory."""
    return io.resolve_complex(spec, os.getcwd())


# -- commands -------------------------------------------------------------


def cmd_subdivide(job, a):
    from .subdivision import regular_subdivision

    kind, obj = _load(a.input, "configuration", "polynomial", "matrix")
    job.emit_complex(regular_subdivision(io.configuration_of(kind, obj)))


def cmd_dome(job, a):
    from .shelling import _dome_facet_id
    from .subdivision import dome

    kind, obj = _load(a.input, "configuration", "polynomial", "matrix")
    cfg = io.configuration_of(kind, obj)
    poly = dome(cfg)
    data = io.polyhedron_to_json(poly)
    facets = [
        {"id": _dome_facet_id(cfg, poly, gens), "normal": [io.rat(c) for c in h.normal], "offset": io.rat(h.offset)}
        for h, gens in poly.facets
    ]
    data["facets"] = sorted(facets, key=lambda f: f["id"])
    job.emit(data)


def cmd_normal_complex(job, a):
    from .subdivision import normal_complex

    kind, obj = _load(a.input, "configuration", "polynomial", "matrix")
    cx = normal_complex(io.configuration_of(kind, obj))
    job.emit_complex(compactify(cx) if a.compactify else cx)


def cmd_tight_span(job, a):
    from .subdivision import tight_span

    kind, obj = _load(a.input, "configuration", "polynomial", "matrix")
    job.emit_complex(tight_span(io.configuration_of(kind, obj)))


def _emit_shelling(job, order, cx, input_path):
    from .shelling import verify_shelling

    if order.complex_ref.startswith("#"):
        order.complex_ref = job.ref_to(input_path, order.complex_ref)
    rep = verify_shelling(cx, order)
    viol = None if rep.valid else {"condition": rep.condition, "index": rep.index, "cell": rep.cell, "message": rep.message}
    job.emit(io.shelling_to_json(order, rep.valid, viol))
    return 0 if rep.valid else EXIT_FAIL


def cmd_shell_line(job, a):
    from .shelling import polytope_boundary_order_complex, unbounded_line_shelling

    _, (poly, labels) = _load(a.input, "polyhedron")
    order = unbounded_line_shelling(poly, labels=labels, first=a.first)
    return _emit_shelling(job, order, polytope_boundary_order_complex(poly, labels), a.input)


def cmd_shell_vertical(job, a):
    from .shelling import normal_complex_shelling, subdivision_shelling

    kind, obj = _load(a.input, "configuration", "polynomial", "matrix")
    cfg = io.configuration_of(kind, obj)
    if a.mode == "desc":
        order = subdivision_shelling(cfg, a.first)
        cx = io.derived_complex("configuration", cfg, "subdivision")
    else:
        order = normal_complex_shelling(cfg, a.first)
        cx = io.derived_complex("configuration", cfg, "normal-complex-compactified")
    return _emit_shelling(job, order, cx, a.input)


def cmd_shell_lex(job, a):
    from .shelling import lex_coarse_type_shelling, lex_line_order

    _, v = _load(a.input, "matrix")
    order = lex_coarse_type_shelling(v)
    if lex_line_order(v) != order.order:
        raise TropshellError("lex line order disagrees with the coarse-type order")
    return _emit_shelling(job, order, compactify(io.derived_complex("matrix", v, "covdec")), a.input)


def cmd_shell_brute(job, a):
    from .shelling import brute_force_shellability

    cx = _complex_arg(a.complex)
    res = brute_force_shellability(cx, a.max_cells)
    if res.order is None:
        job.emit({"schema": io.SCHEMAS["shelling"], "order": None, "shellable": False, "exhausted": res.exhausted, "states": res.states, "complex_ref": a.complex})
        return EXIT_FAIL
    res.order.complex_ref = a.complex
    data = io.shelling_to_json(res.order, True)
    data.update(shellable=True, exhausted=res.exhausted, states=res.states)
    job.emit(data)


def cmd_verify_shelling(job, a):
    from .shelling import verify_shelling

    data = io.read_json(a.order)
    order = io.shelling_from_json(data)
    if a.complex:
        cx = _complex_arg(a.complex)
    else:
        cx = io.resolve_complex(order.complex_ref, os.path.dirname(os.path.abspath(a.order)))
    rep = verify_shelling(cx, order)
    viol = None if rep.valid else {"condition": rep.condition, "index": rep.index, "cell": rep.cell, "message": rep.message}
    job.emit(io.shelling_to_json(order, rep.valid, viol))
    return 0 if rep.valid else EXIT_FAIL


def cmd_morse_verify(job, a):
    from .morse import verify_matching

    data = io.read_json(a.matching)
    if a.complex:
        cx = _complex_arg(a.complex)
    else:
        cx = io.resolve_complex(data.get("complex_ref", ""), os.path.dirname(os.path.abspath(a.matching)))
    m = io.matching_from_json(data, cx)
    rep = verify_matching(cx, m)
    out = io.matching_to_json(m, rep.valid, data.get("complex_ref", a.complex or ""))
    out["critical_by_dim"] = {str(k): v for k, v in sorted(rep.critical_by_dim.items())}
    out["euler_identity"] = rep.euler_identity
    if not rep.valid:
        out["violation"] = {"message": rep.message, "cycle": rep.cycle}
    job.emit(out)
    return 0 if rep.valid else EXIT_FAIL


def cmd_morse_from_shelling(job, a):
    from .morse import matching_from_shelling, verify_matching

    data = io.read_json(a.order)
    order = io.shelling_from_json(data)
    cx = io.resolve_complex(order.complex_ref, os.path.dirname(os.path.abspath(a.order)))
    m = matching_from_shelling(cx, order.order, a.kind, restrict_boundary=a.restrict_boundary)
    rep = verify_matching(cx, m)
    path, sep, frag = order.complex_ref.partition("#")
    ref = job.ref_to(os.path.join(os.path.dirname(os.path.abspath(a.order)), path), sep + frag)
    job.emit(io.matching_to_json(m, rep.valid, ref))
    return 0 if rep.valid else EXIT_FAIL


def cmd_collapse_certificate(job, a):
    from .morse import tight_span_collapsibility, verify_matching
    from .subdivision import tight_span

    kind, obj = _load(a.input, "configuration", "polynomial", "matrix")
    cfg = io.configuration_of(kind, obj)
    cert = tight_span_collapsibility(cfg, a.first)
    rep = verify_matching(tight_span(cfg), cert.matching)
    out = io.matching_to_json(cert.matching, rep.valid, job.ref_to(a.input, "#tight-span"))
    out["critical_vertex"] = cert.critical_vertex
    out["provenance"] = {k: ([list(p) for p in v] if k == "ball_matching" else v) for k, v in cert.provenance.items()}
    job.emit(out)
    return 0 if rep.valid and len(cert.matching.critical) == 1 else EXIT_FAIL


def cmd_collapse_brute(job, a):
    from .morse import brute_force_collapse

    cx = _complex_arg(a.complex)
    m = brute_force_collapse(cx, max_cells=a.max_cells)
    if m is None:
        job.emit({"schema": io.SCHEMAS["matching"], "pairs": None, "collapsible": False, "complex_ref": a.complex})
        return EXIT_FAIL
    out = io.matching_to_json(m, True, a.complex)
    out["collapsible"] = True
    job.emit(out)


def cmd_hypersurface(job, a):
    from .tropical import arrangement_polynomial, hypersurface

    kind, obj = _load(a.input, "polynomial", "matrix")
    f = arrangement_polynomial(obj) if kind == "matrix" else obj
    job.emit_complex(hypersurface(f))


def cmd_covectors(job, a):
    from .tropical import coarse_type, covector

    _, v = _load(a.input, "matrix")
    x = [io.parse_rat(t.strip()) for t in a.point.split(",")]
    if len(x) == v.d - 1:
        x = [0] + x
    g = covector(v, x)
    job.emit(
        {
            "point": [io.rat(t) for t in x],
            "covector": [sorted(s) for s in g],
            "coarse_type": list(coarse_type(g)),
        }
    )


def cmd_covdec(job, a):
    from .tropical import covector_decomposition, covector_labels

    _, v = _load(a.input, "matrix")
    cx = covector_decomposition(v)
    if a.labels:
        data = io.complex_to_json(cx)
        data["covectors"] = {cid: [sorted(s) for s in g] for cid, g in sorted(covector_labels(v, cx).items())}
        job.emit(data)
        return
    job.emit_complex(compactify(cx) if a.compactify else cx)


def cmd_tropical_polytope(job, a):
    from .tropical import tropical_polytope

    _, v = _load(a.input, "matrix")
    job.emit_complex(tropical_polytope(v))


def cmd_projective_closure(job, a):
    from .tropical import face_at_infinity, projective_covector_complex, projective_isomorphism

    _, v = _load(a.input, "matrix")
    if not v.full_support:
        info = face_at_infinity(v)
        sys.stderr.write(
            f"error: projective closure needs a matrix with full support; the face at infinity of the dome has "
            f"{info.n_vertices} vertices (a simplex would have {info.dim + 1})\n"
        )
        return EXIT_PRECONDITION
    cx = projective_covector_complex(v)
    iso = projective_isomorphism(v)
    data = io.complex_to_json(cx)
    data["schlegel_isomorphism"] = dict(sorted(iso.mapping.items())) if iso.found else None
    job.emit(data)
    return 0 if iso.found else EXIT_FAIL


def cmd_compactify(job, a):
    job.emit_complex(compactify(_complex_arg(a.complex)))


def cmd_plot(job, a):
    from .svg import emit_svg, render_svg

    cx = _complex_arg(a.complex)
    if a.svg:
        emit_svg(cx, a.svg)
    else:
        sys.stdout.write(render_svg(cx))


# -- parser ---------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tropshell", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_, *, svg=False):
        s = sub.add_parser(name, help=help_, description=help_)
        s.set_defaults(fn=fn)
        s.add_argument("--output", "-o", help="write JSON here instead of stdout")
        if svg:
            s.add_argument("--svg", help="also draw the complex (planar inputs only)")
        return s

    cfg_help = "configuration, polynomial or matrix JSON"
    s = add("subdivide", cmd_subdivide, "regular subdivision of a configuration", svg=True)
    s.add_argument("input", help=cfg_help)
    s = add("dome", cmd_dome, "the dome and its facets")
    s.add_argument("input", help=cfg_help)
    s = add("normal-complex", cmd_normal_complex, "normal complex (projected dome faces)", svg=True)
    s.add_argument("input", help=cfg_help)
    s.add_argument("--compactify", action="store_true", help="add the star at infinity")
    s = add("tight-span", cmd_tight_span, "bounded cells of the normal complex", svg=True)
    s.add_argument("input", help=cfg_help)

    s = add("shell-line", cmd_shell_line, "line shelling of a polyhedron's (compactified) boundary")
    s.add_argument("input", help="polyhedron JSON")
    s.add_argument("--first", help="facet to start with")
    s = add("shell-vertical", cmd_shell_vertical, "vertical line shelling of a subdivision or normal complex")
    s.add_argument("input", help=cfg_help)
    s.add_argument("--mode", choices=["desc", "asc"], default="desc", help="desc: subdivision, asc: compactified normal complex")
    s.add_argument("--first", help="maximal cell to start with")
    s = add("shell-lex", cmd_shell_lex, "lex coarse-type shelling of a compactified covector decomposition")
    s.add_argument("input", help="matrix JSON")
    s = add("shell-brute", cmd_shell_brute, "exhaustive shellability search")
    s.add_argument("complex", help="complex JSON, or FILE#KIND for a derived complex")
    s.add_argument("--max-cells", type=int, default=None, help="maximal-cell limit (default: TROPSHELL_BUDGET or 16)")
    s = add("verify-shelling", cmd_verify_shelling, "check an order against conditions (S1)-(S3)")
    s.add_argument("--order", required=True, help="shelling JSON")
    s.add_argument("complex", nargs="?", help="override the order's complex_ref")

    s = add("morse-verify", cmd_morse_verify, "check an acyclic matching")
    s.add_argument("matching", help="matching JSON")
    s.add_argument("complex", nargs="?", help="override the matching's complex_ref")
    s = add("morse-from-shelling", cmd_morse_from_shelling, "acyclic matching from a shelling of a ball or sphere")
    s.add_argument("--order", required=True, help="shelling JSON")
    s.add_argument("--kind", choices=["ball", "sphere"], default="sphere")
    s.add_argument("--restrict-boundary", action="store_true", help="make the ball matching restrict to the boundary sphere")
    s = add("collapse-certificate", cmd_collapse_certificate, "collapse of the tight span via shelling and duality")
    s.add_argument("input", help=cfg_help)
    s.add_argument("--first", help="first cell of the subdivision shelling")
    s = add("collapse-brute", cmd_collapse_brute, "exhaustive collapse search")
    s.add_argument("complex", help="complex JSON, or FILE#KIND")
    s.add_argument("--max-cells", type=int, default=25)

    s = add("hypersurface", cmd_hypersurface, "compactified tropical hypersurface", svg=True)
    s.add_argument("input", help="polynomial or matrix JSON")
    s = add("covectors", cmd_covectors, "covector and coarse type of a point")
    s.add_argument("input", help="matrix JSON")
    s.add_argument("--point", required=True, help="comma-separated coordinates (d, or d-1 with x1 = 0)")
    s = add("covdec", cmd_covdec, "covector decomposition", svg=True)
    s.add_argument("input", help="matrix JSON")
    s.add_argument("--compactify", action="store_true")
    s.add_argument("--labels", action="store_true", help="include the covector of every cell")
    s = add("tropical-polytope", cmd_tropical_polytope, "bounded covector cells", svg=True)
    s.add_argument("input", help="matrix JSON")
    s = add("projective-closure", cmd_projective_closure, "closure in tropical projective space, with the Schlegel isomorphism")
    s.add_argument("input", help="matrix JSON")
    s = add("compactify", cmd_compactify, "one-point compactification of a complex", svg=True)
    s.add_argument("complex", help="complex JSON, or FILE#KIND")
    s = add("plot", cmd_plot, "draw a planar complex as SVG")
    s.add_argument("complex", help="complex JSON, or FILE#KIND")
    s.add_argument("--svg", help="output file (default: stdout)")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    job = _Job(args)
    try:
        status = args.fn(job, args)
    except io.ParseError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_PARSE
    except (PreconditionError, BudgetExceededError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_PRECONDITION
    except TropshellError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_FAIL
    return status or 0


if __name__ == "__main__":
    sys.exit(main())
