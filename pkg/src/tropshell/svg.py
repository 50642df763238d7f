"""Static SVG drawings of planar complexes.

Unbounded cells are cut off at the bounding box of the finite vertices,
padded by one unit, using a clip path.  A compactified complex gets its star
drawn as a marked point in the top right corner of that box.
"""

from __future__ import annotations

import math
from xml.sax.saxutils import escape

from .complex import CellComplex
from .errors import PreconditionError

BOUNDED = "#9ecae1"
UNBOUNDED = "#fdd0a2"
SIZE = 480


def _finite_vertices(cx: CellComplex, cid: str) -> list[tuple]:
    return [cx.vertex_coords[v] for v in sorted(cx.closure_vertices(cid)) if v in cx.vertex_coords]


def _unbounded_edges(cx: CellComplex, cid: str):
    """``(start vertex, ray direction)`` of the unbounded edges in the closure of ``cid``."""
    out = []
    for e in sorted(cx.closure(cid)):
        c = cx.cells[e]
        if c.dim == 1 and c.rays:
            (r,) = sorted(c.rays)
            starts = [v for v in c.vertices if v in cx.vertex_coords] or [b for b in c.boundary if b in cx.vertex_coords]
            if starts:
                out.append((cx.vertex_coords[starts[0]], cx.ray_dirs[r]))
    return out


def render_svg(cx: CellComplex) -> str:
    if not len(cx):
        raise PreconditionError("nothing to draw: the complex is empty")
    coords = list(cx.vertex_coords.values())
    if not coords:
        raise PreconditionError("the complex has no finite vertices to place")
    if any(len(x) != 2 for x in coords):
        raise PreconditionError("only complexes in the plane can be drawn")
    xs = [float(x[0]) for x in coords]
    ys = [float(x[1]) for x in coords]
    x0, x1, y0, y1 = min(xs) - 1, max(xs) + 1, min(ys) - 1, max(ys) + 1
    span = max(x1 - x0, y1 - y0)
    reach = 4 * span

    def px(p):
        return ((float(p[0]) - x0) / span * SIZE, (y1 - float(p[1])) / span * SIZE)

    def far(v, r):
        n = math.hypot(float(r[0]), float(r[1]))
        return (float(v[0]) + reach * float(r[0]) / n, float(v[1]) + reach * float(r[1]) / n)

    w, h = (x1 - x0) / span * SIZE, (y1 - y0) / span * SIZE
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{w:.1f}" height="{h:.1f}" viewBox="0 0 {w:.1f} {h:.1f}">',
        f'<defs><clipPath id="box"><rect x="0" y="0" width="{w:.1f}" height="{h:.1f}"/></clipPath></defs>',
        '<g clip-path="url(#box)">',
    ]
    for c in cx.cells_of_dim(2):
        pts = [tuple(float(a) for a in v) for v in _finite_vertices(cx, c.id)]
        pts += [far(v, r) for v, r in _unbounded_edges(cx, c.id)]
        cx_, cy_ = sum(p[0] for p in pts) / len(pts), sum(p[1] for p in pts) / len(pts)
        pts.sort(key=lambda p: math.atan2(p[1] - cy_, p[0] - cx_))
        poly = " ".join(f"{a:.2f},{b:.2f}" for a, b in map(px, pts))
        fill = BOUNDED if c.bounded else UNBOUNDED
        out.append(f'<polygon points="{poly}" fill="{fill}" fill-opacity="0.7" stroke="none"><title>{escape(c.id)}</title></polygon>')
    for c in cx.cells_of_dim(1):
        ends = [cx.vertex_coords[b] for b in sorted(c.boundary) if b in cx.vertex_coords]
        if c.rays:
            (r,) = sorted(c.rays)
            a, b = px(ends[0]), px(far(ends[0], cx.ray_dirs[r]))
        elif len(ends) == 2:
            a, b = px(ends[0]), px(ends[1])
        else:
            continue
        out.append(
            f'<line x1="{a[0]:.2f}" y1="{a[1]:.2f}" x2="{b[0]:.2f}" y2="{b[1]:.2f}" stroke="#333" stroke-width="1.5">'
            f"<title>{escape(c.id)}</title></line>"
        )
    out.append("</g>")
    for vid, x in sorted(cx.vertex_coords.items()):
        a = px(x)
        out.append(f'<circle cx="{a[0]:.2f}" cy="{a[1]:.2f}" r="3" fill="#000"><title>{escape(vid)}</title></circle>')
        out.append(f'<text x="{a[0] + 5:.2f}" y="{a[1] - 5:.2f}" font-size="11" font-family="sans-serif">{escape(vid)}</text>')
    if cx.star_id() is not None:
        sx, sy = w - 12, 12
        out.append(f'<circle cx="{sx:.2f}" cy="{sy:.2f}" r="5" fill="#d62728"><title>*</title></circle>')
        out.append(f'<text x="{sx - 16:.2f}" y="{sy + 4:.2f}" font-size="12" font-family="sans-serif">*</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def emit_svg(cx: CellComplex, path: str) -> None:
    text = render_svg(cx)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


__all__ = ["emit_svg", "render_svg"]
