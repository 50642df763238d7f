"""Regular subdivisions and their duals.

A :class:`PointConfiguration` with heights gives two polyhedra in one more
dimension: the extended Newton polyhedron ``U`` (lifted points plus the upward
ray) and the dome (the region below ``min_u omega(u) + <u, x>``).  Their faces
are dual to each other, and projecting them gives the regular subdivision and
the normal complex respectively.

Cells on both sides are named by the labels of the points involved, so a face
of the subdivision and its dual cell of the normal complex share an id.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from .complex import Cell, CellComplex, complex_from_faces, label_id
from .errors import DimensionMismatchError, PreconditionError
from .kernel import Halfspace, Polyhedron, affine_rank, dot, vec
from .kernel.linalg import primitive


class PointConfiguration:
    """Labelled rational points with a height for each."""

    def __init__(self, points: Sequence[Sequence], heights: Sequence, labels: Sequence[str] | None = None):
        self.points = [vec(p) for p in points]
        self.heights = list(vec(heights))
        if not self.points:
            raise PreconditionError("empty point configuration")
        if len(self.heights) != len(self.points):
            raise DimensionMismatchError(f"{len(self.points)} points but {len(self.heights)} heights")
        self.dim = len(self.points[0])
        if any(len(p) != self.dim for p in self.points):
            raise DimensionMismatchError("points of different dimensions")
        self.labels = [str(i + 1) for i in range(len(self.points))] if labels is None else [str(x) for x in labels]
        if len(set(self.labels)) != len(self.labels) or len(self.labels) != len(self.points):
            raise PreconditionError("labels must be unique, one per point")
        if len(set(self.points)) != len(self.points):
            raise PreconditionError("repeated point in configuration")
        if affine_rank(self.points) != self.dim:
            raise PreconditionError(
                f"points span an affine space of dimension {affine_rank(self.points)}, not {self.dim}"
            )

    def __len__(self):
        return len(self.points)

    def __repr__(self):
        return f"PointConfiguration(n={len(self)}, d={self.dim})"

    def height_of(self, label: str) -> Fraction:
        return self.heights[self.labels.index(label)]

    def lifted(self) -> list[tuple]:
        return [p + (h,) for p, h in zip(self.points, self.heights)]

    def evaluate(self, x: Sequence) -> tuple[Fraction, frozenset]:
        """``min_u omega(u) + <u, x>`` and the labels attaining it."""
        x = vec(x)
        vals = [h + dot(p, x) for p, h in zip(self.points, self.heights)]
        m = min(vals)
        return m, frozenset(lab for lab, v in zip(self.labels, vals) if v == m)

    @cached_property
    def _extended_newton(self) -> Polyhedron:
        up = tuple(Fraction(int(i == self.dim)) for i in range(self.dim + 1))
        return Polyhedron(self.lifted(), [up])

    @cached_property
    def _dome(self) -> Polyhedron:
        hs = [Halfspace(p + (Fraction(-1),), -h) for p, h in zip(self.points, self.heights)]
        poly = Polyhedron.from_inequalities(hs)
        assert poly is not None  # (0, min height - 1) is always inside
        return poly


def extended_newton(cfg: PointConfiguration) -> Polyhedron:
    """``conv{(u, omega(u))} + R_{>=0} e_{d+1}``; points keep the configuration order."""
    return cfg._extended_newton


def lower_faces(cfg: PointConfiguration):
    """Bounded faces of the extended Newton polyhedron (all of them are lower faces)."""
    return [f for f in extended_newton(cfg).faces if f.bounded]


def _drop_last(x):
    return tuple(x[:-1])


def regular_subdivision(cfg: PointConfiguration) -> CellComplex:
    """The subdivision of ``conv(A)`` induced by the heights."""
    u = extended_newton(cfg)
    return complex_from_faces(u, lower_faces(cfg), cfg.labels, project=_drop_last)


def dome(cfg: PointConfiguration) -> Polyhedron:
    """``{(x, s) : <u, x> - s >= -omega(u) for all u}``, one halfspace per point."""
    return cfg._dome


def _tight_labels(cfg: PointConfiguration, poly: Polyhedron, face) -> frozenset:
    pts = [poly.points[i] for i in face.points]
    rays = [poly.rays[j] for j in face.rays]
    out = []
    for lab, p, h in zip(cfg.labels, cfg.points, cfg.heights):
        normal = p + (Fraction(-1),)
        if all(dot(normal, x) == -h for x in pts) and all(dot(normal, r) == 0 for r in rays):
            out.append(lab)
    return frozenset(out)


@dataclass(frozen=True)
class DomeFace:
    id: str
    labels: frozenset
    dim: int
    vertices: tuple  # lifted coordinates
    rays: tuple


def dome_faces(cfg: PointConfiguration) -> list[DomeFace]:
    """Proper faces of the dome, each named by the labels tight on it."""
    poly = dome(cfg)
    out = []
    for f in poly.proper_faces():
        labs = _tight_labels(cfg, poly, f)
        out.append(
            DomeFace(
                label_id(labs),
                labs,
                f.dim,
                tuple(poly.points[i] for i in sorted(f.points)),
                tuple(poly.rays[j] for j in sorted(f.rays)),
            )
        )
    return out


def normal_complex(cfg: PointConfiguration) -> CellComplex:
    """Projection of the proper faces of the dome to the first ``d`` coordinates.

    The cell dual to a face of the subdivision with point labels ``S`` is
    ``{x : argmin(x) contains S}`` and carries the same id.
    """
    poly = dome(cfg)
    proper = poly.proper_faces()
    labs = {f: _tight_labels(cfg, poly, f) for f in proper}
    return _normal_complex_from(poly, proper, labs)


def _normal_complex_from(poly: Polyhedron, proper, labs) -> CellComplex:
    ray_ids: dict[tuple, str] = {}
    ray_of: dict[int, str] = {}
    for j, r in enumerate(poly.rays):
        d = primitive(r[:-1])
        if d not in ray_ids:
            ray_ids[d] = f"r{len(ray_ids)}"
        ray_of[j] = ray_ids[d]
    ids = {f: label_id(labs[f]) for f in proper}
    if len(set(ids.values())) != len(ids):
        raise PreconditionError("two dome faces have the same tight set")
    vertex_id = {next(iter(f.points)): ids[f] for f in proper if f.dim == 0}
    by_dim: dict[int, list] = {}
    for f in proper:
        by_dim.setdefault(f.dim, []).append(f)
    cells = []
    used = set()
    for f in proper:
        bd = [g for g in by_dim.get(f.dim - 1, []) if g <= f]
        rays = frozenset(ray_of[j] for j in f.rays)
        used |= rays
        cells.append(
            Cell(
                ids[f],
                f.dim,
                vertices=frozenset(vertex_id[i] for i in f.points),
                rays=rays,
                boundary=frozenset(ids[g] for g in bd),
            )
        )
    coords = {vid: _drop_last(poly.points[i]) for i, vid in vertex_id.items()}
    dirs = {rid: d for d, rid in ray_ids.items() if rid in used}
    return CellComplex(cells, coords, dirs)


def tight_span(cfg: PointConfiguration) -> CellComplex:
    """Bounded cells of the normal complex."""
    return normal_complex(cfg).bounded_subcomplex()


def sample_point(cx: CellComplex, cell_id: str) -> tuple:
    """Relative-interior point: vertex barycenter plus the sum of the ray directions."""
    verts = [cx.vertex_coords[v] for v in sorted(cx.closure_vertices(cell_id)) if v in cx.vertex_coords]
    if not verts:
        raise PreconditionError(f"cell {cell_id!r} has no finite vertices")
    n = len(verts)
    x = [sum(col, Fraction(0)) / n for col in zip(*verts)]
    rays = set()
    for c in cx.closure(cell_id):
        rays |= cx.cells[c].rays
    for r in sorted(rays):
        x = [a + b for a, b in zip(x, cx.ray_dirs[r])]
    return tuple(x)


@dataclass
class DualityMap:
    """Inclusion-reversing bijection from dome faces to bounded faces of ``U``."""

    pairs: dict = field(default_factory=dict)  # dome face id -> subdivision cell id
    dome_dims: dict = field(default_factory=dict)
    subdivision_dims: dict = field(default_factory=dict)

    def __getitem__(self, dome_face_id):
        return self.pairs[dome_face_id]

    def inverse(self) -> dict:
        return {v: k for k, v in self.pairs.items()}

    def __len__(self):
        return len(self.pairs)


def duality_map(cfg: PointConfiguration) -> DualityMap:
    """Pair each dome face with the lower face of ``U`` on the points tight there.

    Built independently from both face lattices; raises if they fail to match.
    """
    lower = {label_id(cfg.labels[i] for i in f.points): f.dim for f in lower_faces(cfg)}
    dfaces = dome_faces(cfg)
    pairs, ddims = {}, {}
    for f in dfaces:
        if f.id not in lower:
            raise PreconditionError(f"dome face {f.id!r} has no dual lower face")
        if lower[f.id] != cfg.dim - f.dim:
            raise PreconditionError(f"dimension mismatch between dome face {f.id!r} and its dual")
        pairs[f.id] = f.id
        ddims[f.id] = f.dim
    if len(pairs) != len(lower):
        raise PreconditionError("dome faces and lower faces are not in bijection")
    return DualityMap(pairs, ddims, dict(lower))


def interior_cells(sigma: CellComplex) -> list[str]:
    """Cells of a subdivision of a polytope not lying on its boundary."""
    d = sigma.dim
    free = [c.id for c in sigma.cells_of_dim(d - 1) if len(sigma.coboundary[c.id]) == 1]
    bd = sigma.closure_of(free)
    return [cid for cid in sigma.cells if cid not in bd]

