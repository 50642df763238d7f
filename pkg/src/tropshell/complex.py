"""Regular cell complexes with optional geometry.

A :class:`CellComplex` is a finite graded poset given by each cell's boundary
(its facets).  Cells may carry geometry: vertex ids with coordinates and ray
ids with directions, so that unbounded polyhedral cells can be one-point
compactified.  Complexes are immutable once built.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import Callable, Iterable, Mapping, Sequence

import networkx as nx

from .errors import PreconditionError
from .kernel import Polyhedron
from .kernel.linalg import primitive

STAR = "*"


@dataclass(frozen=True)
class Cell:
    id: str
    dim: int
    vertices: frozenset = frozenset()
    rays: frozenset = frozenset()
    boundary: frozenset = frozenset()
    is_star: bool = False

    @property
    def bounded(self) -> bool:
        return not self.rays


def cell_key(cell_id: str, dim: int = 0):
    return (dim, cell_id)


def label_id(labels: Iterable[str]) -> str:
    """Canonical id of a labelled cell: sorted labels, joined.

    Single-character labels are concatenated (``"157"``); otherwise a comma
    separates them (``"112,121"``).
    """
    labs = sorted(labels, key=_label_sort_key)
    sep = "" if all(len(lab) == 1 for lab in labs) else ","
    return sep.join(labs)


def _label_sort_key(label: str):
    return (0, int(label), label) if label.isdigit() and len(label) < 3 else (1, 0, label)


class CellComplex:
    """Finite regular cell complex, closed under taking boundaries."""

    def __init__(
        self,
        cells: Iterable[Cell],
        vertex_coords: Mapping[str, tuple] | None = None,
        ray_dirs: Mapping[str, tuple] | None = None,
        compactified: bool = False,
        *,
        check: bool = True,
    ):
        ordered = sorted(cells, key=lambda c: (c.dim, c.id))
        self.cells: dict[str, Cell] = {}
        for c in ordered:
            if c.id in self.cells:
                raise PreconditionError(f"duplicate cell id {c.id!r}")
            self.cells[c.id] = c
        self.vertex_coords = dict(vertex_coords or {})
        self.ray_dirs = dict(ray_dirs or {})
        self.compactified = compactified
        if check:
            self.validate()

    # -- structure ------------------------------------------------------

    def validate(self) -> None:
        stars = [c for c in self.cells.values() if c.is_star]
        for c in self.cells.values():
            if c.dim < 0:
                raise PreconditionError(f"cell {c.id!r} has negative dimension")
            for b in c.boundary:
                if b not in self.cells:
                    raise PreconditionError(f"cell {c.id!r} has unknown boundary cell {b!r}")
                if self.cells[b].dim != c.dim - 1:
                    raise PreconditionError(f"boundary cell {b!r} of {c.id!r} has the wrong dimension")
            if c.dim > 0 and not c.boundary:
                raise PreconditionError(f"cell {c.id!r} of dimension {c.dim} has empty boundary")
            if c.is_star and (c.dim != 0 or c.boundary):
                raise PreconditionError("the star must be a vertex")
        if self.compactified and len(stars) != 1:
            raise PreconditionError("a compactified complex has exactly one star vertex")
        if not self.compactified and stars:
            raise PreconditionError("star vertex in a complex not flagged compactified")

    def __len__(self) -> int:
        return len(self.cells)

    def __contains__(self, cell_id) -> bool:
        return cell_id in self.cells

    def __getitem__(self, cell_id) -> Cell:
        return self.cells[cell_id]

    def __iter__(self):
        return iter(self.cells.values())

    def __eq__(self, other):
        if not isinstance(other, CellComplex):
            return NotImplemented
        return (
            self.cells == other.cells
            and self.vertex_coords == other.vertex_coords
            and self.ray_dirs == other.ray_dirs
            and self.compactified == other.compactified
        )

    def __repr__(self):
        return f"CellComplex(dim={self.dim}, f={self.f_vector()}, compactified={self.compactified})"

    @property
    def dim(self) -> int:
        return max((c.dim for c in self.cells.values()), default=-1)

    def f_vector(self) -> list[int]:
        f = [0] * (self.dim + 1)
        for c in self.cells.values():
            f[c.dim] += 1
        return f

    def cells_of_dim(self, k: int) -> list[Cell]:
        return [c for c in self.cells.values() if c.dim == k]

    @cached_property
    def coboundary(self) -> dict[str, frozenset]:
        up: dict[str, set] = {cid: set() for cid in self.cells}
        for c in self.cells.values():
            for b in c.boundary:
                up[b].add(c.id)
        return {k: frozenset(v) for k, v in up.items()}

    @cached_property
    def _closures(self) -> dict[str, frozenset]:
        out: dict[str, frozenset] = {}
        for c in self.cells.values():  # sorted by dimension
            acc = {c.id}
            for b in c.boundary:
                acc |= out[b]
            out[c.id] = frozenset(acc)
        return out

    def closure(self, cell_id: str) -> frozenset:
        return self._closures[cell_id]

    def boundary_closure(self, cell_id: str) -> frozenset:
        return self._closures[cell_id] - {cell_id}

    def closure_of(self, ids: Iterable[str]) -> frozenset:
        acc: set = set()
        for i in ids:
            acc |= self._closures[i]
        return frozenset(acc)

    def maximal_cells(self) -> list[str]:
        return [cid for cid in self.cells if not self.coboundary[cid]]

    def is_pure(self) -> bool:
        return len({self.cells[m].dim for m in self.maximal_cells()}) <= 1

    def closure_vertices(self, cell_id: str) -> frozenset:
        return frozenset(i for i in self._closures[cell_id] if self.cells[i].dim == 0)

    def star_id(self) -> str | None:
        return next((c.id for c in self.cells.values() if c.is_star), None)

    def subcomplex(self, ids: Iterable[str]) -> "CellComplex":
        """The smallest subcomplex containing ``ids``."""
        keep = self.closure_of(ids)
        star = self.star_id()
        has_star = star in keep
        verts = {v: x for v, x in self.vertex_coords.items() if v in keep}
        used_rays = set()
        for cid in keep:
            used_rays |= self.cells[cid].rays
        rays = {r: x for r, x in self.ray_dirs.items() if r in used_rays}
        return CellComplex(
            [self.cells[i] for i in keep], verts, rays, compactified=self.compactified and has_star, check=False
        )

    def bounded_subcomplex(self) -> "CellComplex":
        return self.subcomplex(c.id for c in self.cells.values() if c.bounded and not c.is_star)

    def relabel(self, mapping: Mapping[str, str]) -> "CellComplex":
        def m(i):
            return mapping.get(i, i)

        cells = [
            replace(c, id=m(c.id), vertices=frozenset(m(v) for v in c.vertices), boundary=frozenset(m(b) for b in c.boundary))
            for c in self.cells.values()
        ]
        verts = {m(v): x for v, x in self.vertex_coords.items()}
        return CellComplex(cells, verts, self.ray_dirs, self.compactified)

    def hasse_digraph(self) -> nx.DiGraph:
        """Arcs ``(sigma, tau)`` whenever sigma is a facet of tau."""
        g = nx.DiGraph()
        for c in self.cells.values():
            g.add_node(c.id, dim=c.dim)
        for c in self.cells.values():
            for b in c.boundary:
                g.add_edge(b, c.id)
        return g

    def check_face_to_face(self) -> None:
        """Common vertices of two cells must span a common face.

        Only meaningful for geometric (non-compactified) polyhedral complexes.
        O(m^2) over pairs of cells.
        """
        by_vertices: dict[str, frozenset] = {cid: self.closure_vertices(cid) for cid in self.cells}
        ids = list(self.cells)
        for i, a in enumerate(ids):
            for b in ids[i + 1 :]:
                common = by_vertices[a] & by_vertices[b]
                if not common:
                    continue
                shared = self._closures[a] & self._closures[b]
                if not any(by_vertices[s] == common for s in shared):
                    raise PreconditionError(f"cells {a!r} and {b!r} do not meet face-to-face")

    def cell_sphere_check(self) -> list[str]:
        """Cells whose boundary does not have the Euler characteristic of a sphere."""
        bad = []
        for c in self.cells.values():
            if c.dim == 0:
                continue
            chi = sum((-1) ** self.cells[b].dim for b in self.boundary_closure(c.id))
            if chi != 1 + (-1) ** (c.dim - 1):
                bad.append(c.id)
        return bad


# -- operations -----------------------------------------------------------


def euler_characteristic(cx: CellComplex) -> int:
    return sum((-1) ** c.dim for c in cx)


def skeleton(cx: CellComplex, k: int) -> CellComplex:
    """All cells of dimension at most ``k``."""
    if not 0 <= k <= max(cx.dim, 0):
        raise PreconditionError(f"skeleton dimension {k} out of range 0..{cx.dim}")
    keep = [c for c in cx if c.dim <= k]
    star = cx.star_id()
    used_rays = set()
    for c in keep:
        used_rays |= c.rays
    return CellComplex(
        keep,
        {v: x for v, x in cx.vertex_coords.items() if v in {c.id for c in keep}},
        {r: x for r, x in cx.ray_dirs.items() if r in used_rays},
        compactified=cx.compactified and star is not None,
    )


def compactify(cx: CellComplex) -> CellComplex:
    """One-point compactification: a star vertex closes every unbounded cell.

    Bounded cells are untouched.  Unbounded 1-cells (rays) get the star as
    their second endpoint; higher unbounded cells pick the star up through
    their unbounded boundary cells.
    """
    if cx.compactified:
        raise PreconditionError("complex is already compactified")
    if all(c.bounded for c in cx):
        raise PreconditionError("complex has no unbounded cells to compactify")
    if STAR in cx.cells:
        raise PreconditionError(f"cell id {STAR!r} is reserved for the star vertex")
    cells = [Cell(STAR, 0, is_star=True)]
    for c in cx:
        if c.bounded:
            cells.append(c)
        elif c.dim == 0:
            raise PreconditionError(f"unbounded 0-cell {c.id!r}")
        elif c.dim == 1:
            cells.append(replace(c, boundary=c.boundary | {STAR}))
        else:
            cells.append(c)
    out = CellComplex(cells, cx.vertex_coords, cx.ray_dirs, compactified=True)
    bad = out.cell_sphere_check()
    if bad:
        raise PreconditionError(f"compactified cells with non-spherical boundary: {bad}")
    return out


@dataclass
class PseudomanifoldReport:
    ok: bool
    pure: bool
    overfull: list = field(default_factory=list)  # codim-1 cells in >2 maximal cells
    components: int = 1
    boundary: list = field(default_factory=list)  # codim-1 cells in exactly 1 maximal cell
    message: str = ""


def pseudomanifold_check(cx: CellComplex) -> PseudomanifoldReport:
    maximal = cx.maximal_cells()
    if not cx.is_pure():
        return PseudomanifoldReport(False, False, message="complex is not pure")
    d = cx.dim
    if d <= 0:
        ok = len(maximal) <= 2
        return PseudomanifoldReport(ok, True, components=len(maximal), message="" if ok else "too many points")
    overfull, boundary = [], []
    g = nx.Graph()
    g.add_nodes_from(maximal)
    for c in cx.cells_of_dim(d - 1):
        up = sorted(cx.coboundary[c.id])
        if len(up) > 2:
            overfull.append(c.id)
        elif len(up) == 1:
            boundary.append(c.id)
        for i, a in enumerate(up):
            for b in up[i + 1 :]:
                g.add_edge(a, b)
    comps = nx.number_connected_components(g)
    ok = not overfull and comps == 1
    msg = []
    if overfull:
        msg.append(f"{len(overfull)} codimension-one cells in more than two maximal cells")
    if comps != 1:
        msg.append(f"dual graph has {comps} components")
    return PseudomanifoldReport(ok, True, overfull, comps, boundary, "; ".join(msg))


def boundary_subcomplex_ids(cx: CellComplex) -> frozenset:
    """Cells of the boundary of a pure pseudomanifold (codim-1 cells in one maximal cell, closed)."""
    d = cx.dim
    free = [c.id for c in cx.cells_of_dim(d - 1) if len(cx.coboundary[c.id]) == 1]
    return cx.closure_of(free)


# -- isomorphism ----------------------------------------------------------


@dataclass
class IsomorphismResult:
    found: bool
    mapping: dict = field(default_factory=dict)
    message: str = ""


def poset_isomorphic(a: CellComplex, b: CellComplex, seed: Mapping[str, str] | None = None) -> IsomorphismResult:
    """Search for a face-poset isomorphism ``a -> b`` extending ``seed``.

    Backtracking; candidates are pruned by (dim, #boundary, #coboundary) and
    by consistency with already-mapped Hasse neighbours.
    """
    seed = dict(seed or {})
    for x, y in seed.items():
        if x not in a.cells or y not in b.cells:
            raise PreconditionError(f"seed pair {x!r}->{y!r} refers to unknown cells")
    if len(set(seed.values())) != len(seed):
        raise PreconditionError("seed is not injective")
    if sorted(a.f_vector()) != sorted(b.f_vector()) or a.f_vector() != b.f_vector():
        return IsomorphismResult(False, message="f-vectors differ")

    def sig(cx, cid):
        c = cx.cells[cid]
        return (c.dim, len(c.boundary), len(cx.coboundary[cid]))

    for x, y in seed.items():
        if sig(a, x) != sig(b, y):
            return IsomorphismResult(False, message=f"seed pair {x!r}->{y!r} has mismatched signatures")

    by_sig: dict = {}
    for cid in b.cells:
        by_sig.setdefault(sig(b, cid), []).append(cid)

    def neighbours(cx, cid):
        return [(n, -1) for n in cx.cells[cid].boundary] + [(n, 1) for n in cx.coboundary[cid]]

    fwd = dict(seed)
    used = set(seed.values())

    def consistent(x, y):
        for n, rel in neighbours(a, x):
            if n in fwd:
                img = fwd[n]
                if rel < 0 and img not in b.cells[y].boundary:
                    return False
                if rel > 0 and img not in b.coboundary[y]:
                    return False
        return True

    for x, y in seed.items():
        if not consistent(x, y):
            return IsomorphismResult(False, message=f"seed pair {x!r}->{y!r} is inconsistent")

    # visiting order: breadth first from the seed through the Hasse diagram
    order: list[str] = []
    seen = set(seed)
    queue = list(seed) or []
    remaining = [c for c in a.cells if c not in seen]
    while len(order) + len(seed) < len(a.cells):
        if not queue:
            nxt = next(c for c in remaining if c not in seen)
            seen.add(nxt)
            order.append(nxt)
            queue.append(nxt)
        cur = queue.pop(0)
        for n, _ in sorted(neighbours(a, cur)):
            if n not in seen:
                seen.add(n)
                order.append(n)
                queue.append(n)

    def candidates(x):
        mapped = [(n, rel) for n, rel in neighbours(a, x) if n in fwd]
        if mapped:
            n, rel = mapped[0]
            img = fwd[n]
            pool = b.coboundary[img] if rel < 0 else b.cells[img].boundary
            return sorted(c for c in pool if sig(b, c) == sig(a, x))
        return by_sig.get(sig(a, x), [])

    def extend(i):
        if i == len(order):
            return True
        x = order[i]
        for y in candidates(x):
            if y in used or not consistent(x, y):
                continue
            fwd[x] = y
            used.add(y)
            if extend(i + 1):
                return True
            del fwd[x]
            used.discard(y)
        return False

    import sys

    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, 10 * len(order) + 1000))
    try:
        ok = extend(0)
    finally:
        sys.setrecursionlimit(limit)
    if not ok:
        return IsomorphismResult(False, message="no isomorphism extends the seed")
    # verify both directions of every covering relation
    for x, y in fwd.items():
        if {fwd[bb] for bb in a.cells[x].boundary} != set(b.cells[y].boundary):
            return IsomorphismResult(False, message="internal: mapping is not a poset isomorphism")
    return IsomorphismResult(True, fwd)


# -- builders from polyhedra ---------------------------------------------


def face_ids(poly: Polyhedron, faces, labels: Sequence[str], *, ray_project=None, id_of=None):
    """Ids for a family of faces of ``poly``.

    Returns ``(ids, ray_of_index, ray_ids)``: face -> id, ray index -> ray id,
    and projected primitive direction -> ray id.  A face id is built from the
    labels of all points on it; when two faces share a point set (a vertex and
    the ray leaving it, say) the unbounded one gets its ray ids appended.
    """
    ray_project = ray_project or (lambda x: x)
    id_of = id_of or (lambda pts: label_id(labels[i] for i in pts))
    ray_ids: dict[tuple, str] = {}
    ray_of_index: dict[int, str] = {}
    for j, r in enumerate(poly.rays):
        pr = ray_project(r)
        if all(c == 0 for c in pr):
            continue  # collapses under the projection; only unused rays may do this
        d = primitive(pr)
        if d not in ray_ids:
            ray_ids[d] = f"r{len(ray_ids)}"
        ray_of_index[j] = ray_ids[d]
    faces = list(faces)
    ids = {f: id_of(f.points) for f in faces}
    if len(set(ids.values())) != len(ids):
        for f in faces:
            if f.rays:
                ids[f] = ids[f] + "+" + ",".join(sorted(ray_of_index[j] for j in f.rays))
    if len(set(ids.values())) != len(ids):
        raise PreconditionError("faces cannot be told apart by their labels")
    return ids, ray_of_index, ray_ids


def complex_from_faces(
    poly: Polyhedron,
    faces,
    labels: Sequence[str],
    *,
    project: Callable[[tuple], tuple] | None = None,
    ray_project: Callable[[tuple], tuple] | None = None,
    id_of: Callable[[frozenset], str] | None = None,
) -> CellComplex:
    """Cell complex on a down-closed family of faces of ``poly``.

    ``labels[i]`` names point ``i``; a cell's id is built from the labels of
    all points on the face.  Rays are named by their (projected, primitive)
    directions so that parallel rays share an id.
    """
    project = project or (lambda x: x)
    ray_project = ray_project or project
    faces = list(faces)
    fset = set(faces)
    ids, ray_of_index, ray_ids = face_ids(poly, faces, labels, ray_project=ray_project, id_of=id_of)
    vertex_of_point = {next(iter(f.points)): ids[f] for f in faces if f.dim == 0}
    by_dim: dict[int, list] = {}
    for f in faces:
        by_dim.setdefault(f.dim, []).append(f)
    cells = []
    for f in faces:
        bd = [g for g in by_dim.get(f.dim - 1, []) if g <= f]
        if f.dim > 0 and not bd:
            raise PreconditionError("face family is not closed under taking faces")
        cells.append(
            Cell(
                ids[f],
                f.dim,
                vertices=frozenset(vertex_of_point[i] for i in f.points if i in vertex_of_point),
                rays=frozenset(ray_of_index[j] for j in f.rays),
                boundary=frozenset(ids[g] for g in bd),
            )
        )
    missing = [g for f in faces for g in poly.faces if g < f and g not in fset]
    if missing:
        raise PreconditionError("face family is not closed under taking faces")
    vcoords = {vid: project(poly.points[i]) for i, vid in vertex_of_point.items()}
    rdirs = {rid: d for d, rid in ray_ids.items()}
    used = set()
    for c in cells:
        used |= c.rays
    rdirs = {k: v for k, v in rdirs.items() if k in used}
    return CellComplex(cells, vcoords, rdirs)


def boundary_complex(poly: Polyhedron, labels: Sequence[str] | None = None) -> CellComplex:
    """The complex of proper faces of a full-dimensional polyhedron."""
    labels = list(labels) if labels is not None else [str(i + 1) for i in range(len(poly.points))]
    return complex_from_faces(poly, poly.proper_faces(), labels)


def polytope_complex(poly: Polyhedron, labels: Sequence[str] | None = None) -> CellComplex:
    """All faces of a polytope, including the polytope itself."""
    labels = list(labels) if labels is not None else [str(i + 1) for i in range(len(poly.points))]
    return complex_from_faces(poly, poly.faces, labels)


def simplex_boundary(n_vertices: int) -> CellComplex:
    """Boundary of the simplex on vertices ``1..n`` as an abstract complex."""
    from itertools import combinations

    labels = [str(i + 1) for i in range(n_vertices)]
    cells = []
    for k in range(1, n_vertices):
        for sub in combinations(labels, k):
            bd = frozenset(label_id(s) for s in combinations(sub, k - 1)) if k > 1 else frozenset()
            cells.append(Cell(label_id(sub), k - 1, vertices=frozenset(sub), boundary=bd))
    return CellComplex(cells)


def abstract_complex(facets: Mapping[str, Iterable[str]], dims: Mapping[str, int]) -> CellComplex:
    """Complex from an explicit boundary map (ids -> facet ids)."""
    cells = [Cell(cid, dims[cid], boundary=frozenset(bd)) for cid, bd in facets.items()]
    cx = CellComplex(cells, check=False)
    out = []
    for c in cx:
        out.append(replace(c, vertices=cx.closure_vertices(c.id)))
    return CellComplex(out)
