"""Exact polyhedra by exhaustive subset enumeration.

The inputs in this package are desk-sized (ambient dimension at most 4 or 5,
a few dozen generators or halfspaces), so facets and vertices are found by
trying every subset of the right size and keeping the ones that pass an exact
sign test.  That is O(n^(d+1)) but has no degenerate cases to get wrong:
coplanar facets are merged because a facet is identified with its full set of
incident generators.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

from ..errors import DimensionMismatchError, NotPointedError, PreconditionError
from .linalg import (
    affine_rank_of,
    det,
    dot,
    nullspace,
    primitive,
    rank,
    solve,
    sub,
    vec,
)


def orientation(pts: Sequence[Sequence]) -> int:
    """Sign of ``det [[p, 1] for p in pts]`` for ``d+1`` points in d-space."""
    if not pts:
        raise DimensionMismatchError("orientation of an empty point list")
    d = len(pts[0])
    if any(len(p) != d for p in pts):
        raise DimensionMismatchError("points of different dimensions")
    if len(pts) != d + 1:
        raise DimensionMismatchError(f"orientation needs {d + 1} points in dimension {d}, got {len(pts)}")
    value = det([list(vec(p)) + [Fraction(1)] for p in pts])
    return (value > 0) - (value < 0)


def affine_rank(pts: Sequence[Sequence]) -> int:
    """Dimension of the affine hull (0 for a single point)."""
    if not pts:
        raise PreconditionError("affine_rank of an empty point list")
    d = len(pts[0])
    if any(len(p) != d for p in pts):
        raise DimensionMismatchError("points of different dimensions")
    return affine_rank_of([vec(p) for p in pts])


@dataclass(frozen=True)
class Halfspace:
    """``{x : <normal, x> >= offset}``."""

    normal: tuple
    offset: Fraction

    def __post_init__(self):
        if all(c == 0 for c in self.normal):
            raise PreconditionError("halfspace with zero normal")

    def slack(self, x: Sequence) -> Fraction:
        return dot(self.normal, x) - self.offset

    def contains(self, x: Sequence) -> bool:
        return self.slack(x) >= 0

    def is_tight(self, x: Sequence) -> bool:
        return self.slack(x) == 0


@dataclass(frozen=True)
class Face:
    """A nonempty face, given by the indices of the generators it contains."""

    points: frozenset
    rays: frozenset
    dim: int

    @property
    def bounded(self) -> bool:
        return not self.rays

    def __le__(self, other: "Face") -> bool:
        return self.points <= other.points and self.rays <= other.rays

    def __lt__(self, other: "Face") -> bool:
        return self <= other and self != other


def vertex_ray_enumerate(halfspaces: Sequence[Halfspace], lineality: Sequence[Sequence] | None = None):
    """Minimal V-representation ``(vertices, rays)`` of an H-representation.

    The polyhedron must be pointed, or pointed modulo the declared lineality
    space; in the latter case representatives orthogonal to the lineality are
    returned.  An empty polyhedron yields ``([], [])``.
    """
    if not halfspaces:
        raise PreconditionError("no halfspaces given")
    dim = len(halfspaces[0].normal)
    if any(len(h.normal) != dim for h in halfspaces):
        raise DimensionMismatchError("halfspaces of different dimensions")
    a = [h.normal for h in halfspaces]
    b = [h.offset for h in halfspaces]
    lin = nullspace(a, dim)
    eq_rows: list[tuple] = []
    if lin:
        if lineality is None:
            raise NotPointedError(f"polyhedron has a {len(lin)}-dimensional lineality space")
        declared = [vec(v) for v in lineality]
        if rank(declared) != len(lin) or rank(declared + lin) != len(lin):
            raise NotPointedError("declared lineality does not match the lineality space")
        eq_rows = [tuple(v) for v in lin]
    free = dim - len(eq_rows)

    vertices: list[tuple] = []
    seen = set()
    for subset in combinations(range(len(a)), free):
        rows = [a[i] for i in subset] + eq_rows
        rhs = [b[i] for i in subset] + [Fraction(0)] * len(eq_rows)
        x = solve(rows, rhs)
        if x is None or x in seen:
            continue
        if all(dot(ai, x) >= bi for ai, bi in zip(a, b)):
            seen.add(x)
            vertices.append(x)
    if not vertices:
        return [], []

    rays: list[tuple] = []
    seen_r = set()
    for subset in combinations(range(len(a)), free - 1):
        rows = [a[i] for i in subset] + eq_rows
        ns = nullspace(rows, dim) if rows else nullspace([], dim)
        if len(ns) != 1:
            continue
        r = ns[0]
        for cand in (r, tuple(-c for c in r)):
            if all(dot(ai, cand) >= 0 for ai in a):
                p = primitive(cand)
                if p not in seen_r:
                    seen_r.add(p)
                    rays.append(p)
    return vertices, rays


class Polyhedron:
    """``conv(points) + cone(rays)`` together with its facets and faces.

    Points need not all be vertices (lifted point configurations keep their
    non-vertex points so faces can be labelled by every point they contain).
    """

    def __init__(self, points: Sequence[Sequence], rays: Sequence[Sequence] = (), *, _facets=None):
        self.points = [vec(p) for p in points]
        self.rays = [vec(r) for r in rays]
        if not self.points:
            raise PreconditionError("polyhedron without points (use vertex_ray_enumerate for emptiness)")
        self.ambient_dim = len(self.points[0])
        for g in self.points + self.rays:
            if len(g) != self.ambient_dim:
                raise DimensionMismatchError("generators of different dimensions")
        self.dim = affine_rank_of(self.points, self.rays)
        self._given_facets = _facets

    @classmethod
    def from_generators(cls, points, rays=()) -> "Polyhedron":
        return cls(points, rays)

    @classmethod
    def from_inequalities(cls, halfspaces: Sequence[Halfspace], lineality=None) -> "Polyhedron | None":
        """Build from an H-representation; returns ``None`` when empty."""
        verts, rays = vertex_ray_enumerate(halfspaces, lineality)
        if not verts:
            return None
        poly = cls(verts, rays)
        poly._given_facets = list(halfspaces)
        return poly

    # -- generators -----------------------------------------------------

    @property
    def n_generators(self) -> int:
        return len(self.points) + len(self.rays)

    def _homogeneous(self) -> list[tuple]:
        one, zero = Fraction(1), Fraction(0)
        return [p + (one,) for p in self.points] + [r + (zero,) for r in self.rays]

    @property
    def bounded(self) -> bool:
        return not self.rays

    def recession_dim(self) -> int:
        return rank(self.rays) if self.rays else 0

    # -- facets ---------------------------------------------------------

    def _chart(self):
        """Coordinates that parametrize the affine hull injectively."""
        p0 = self.points[0]
        dirs = [sub(p, p0) for p in self.points[1:]] + list(self.rays)
        if not dirs:
            return []
        chosen: list[int] = []
        for c in range(self.ambient_dim):
            trial = chosen + [c]
            if rank([[d[i] for i in trial] for d in dirs]) == len(trial):
                chosen = trial
            if len(chosen) == self.dim:
                break
        return chosen

    @cached_property
    def facets(self) -> list[tuple[Halfspace, frozenset]]:
        """Facets as ``(halfspace, incident generator indices)``.

        Generator indices run over points first, then rays (offset by the
        number of points).
        """
        if self.dim == 0:
            return []
        if self._given_facets is not None:
            return self._facets_from_halfspaces(self._given_facets)
        return self._facets_by_enumeration()

    def _facets_from_halfspaces(self, halfspaces) -> list[tuple[Halfspace, frozenset]]:
        out = []
        seen = set()
        npts = len(self.points)
        for h in halfspaces:
            tight = frozenset(
                [i for i, p in enumerate(self.points) if h.slack(p) == 0]
                + [npts + j for j, r in enumerate(self.rays) if dot(h.normal, r) == 0]
            )
            if tight in seen or not any(i < npts for i in tight):
                continue
            if len(tight) == self.n_generators:
                continue  # implicit equation
            if self._generator_dim(tight) == self.dim - 1:
                seen.add(tight)
                out.append((h, tight))
        return out

    def _facets_by_enumeration(self) -> list[tuple[Halfspace, frozenset]]:
        chart = self._chart() if self.dim < self.ambient_dim else list(range(self.ambient_dim))
        k = len(chart)
        npts = len(self.points)
        homog = [tuple(g[i] for i in chart) + (g[-1],) for g in self._homogeneous()]
        out = []
        seen = set()
        for subset in combinations(range(len(homog)), k):
            if not any(i < npts for i in subset):
                continue
            ns = nullspace([homog[i] for i in subset], k + 1)
            if len(ns) != 1:
                continue
            h = ns[0]
            vals = [dot(h, g) for g in homog]
            if any(v > 0 for v in vals) and any(v < 0 for v in vals):
                continue
            if all(v == 0 for v in vals):
                continue
            tight = frozenset(i for i, v in enumerate(vals) if v == 0)
            if tight in seen:
                continue
            seen.add(tight)
            if any(v < 0 for v in vals):
                h = tuple(-c for c in h)
            h = primitive(h)
            normal = [Fraction(0)] * self.ambient_dim
            for pos, c in enumerate(chart):
                normal[c] = h[pos]
            out.append((Halfspace(tuple(normal), -h[-1]), tight))
        out.sort(key=lambda f: sorted(f[1]))
        return out

    def _generator_dim(self, gens: Iterable[int]) -> int:
        npts = len(self.points)
        pts = [self.points[i] for i in gens if i < npts]
        rays = [self.rays[i - npts] for i in gens if i >= npts]
        if not pts:
            return -1
        return affine_rank_of(pts, rays)

    @property
    def inequalities(self) -> list[Halfspace]:
        return [h for h, _ in self.facets]

    # -- faces ----------------------------------------------------------

    @cached_property
    def faces(self) -> list[Face]:
        """All nonempty faces, including the polyhedron itself, by dimension."""
        npts = len(self.points)
        top = frozenset(range(self.n_generators))
        facet_sets = [t for _, t in self.facets]
        found = {top}
        frontier = [top]
        while frontier:
            nxt = []
            for f in frontier:
                for g in facet_sets:
                    inter = f & g
                    if inter != f and inter not in found and any(i < npts for i in inter):
                        found.add(inter)
                        nxt.append(inter)
            frontier = nxt
        faces = []
        for gens in found:
            faces.append(
                Face(
                    points=frozenset(i for i in gens if i < npts),
                    rays=frozenset(i - npts for i in gens if i >= npts),
                    dim=self._generator_dim(gens),
                )
            )
        faces.sort(key=lambda f: (f.dim, sorted(f.points), sorted(f.rays)))
        return faces

    def proper_faces(self) -> list[Face]:
        return [f for f in self.faces if f.dim < self.dim]

    def vertex_indices(self) -> list[int]:
        return sorted(next(iter(f.points)) for f in self.faces if f.dim == 0)

    def contains(self, x: Sequence) -> bool:
        return all(h.contains(x) for h in self.inequalities) if self.dim == self.ambient_dim else self._contains_lowdim(x)

    def _contains_lowdim(self, x: Sequence) -> bool:
        x = vec(x)
        p0 = self.points[0]
        dirs = [sub(p, p0) for p in self.points[1:]] + list(self.rays)
        if dirs and rank(dirs + [sub(x, p0)]) != rank(dirs):
            return False
        if not dirs:
            return x == p0
        return all(h.contains(x) for h in self.inequalities)

    def interior_point(self) -> tuple:
        """A relative-interior point: average of the points plus the ray sum."""
        n = len(self.points)
        x = [sum(col, Fraction(0)) / n for col in zip(*self.points)]
        for r in self.rays:
            x = [a + b for a, b in zip(x, r)]
        return tuple(x)


def lower_facets(lifted: Sequence[Sequence]) -> list[tuple[frozenset, Halfspace]]:
    """Maximal lower faces of ``conv(lifted) + R_{>=0} e_last``.

    Each facet is returned as the full set of input indices on its supporting
    hyperplane together with the halfspace ``<a, x> >= b`` (``a_last > 0``) that
    the lifted points satisfy.  The outward normal is ``-a``, pointing down.
    """
    if not lifted:
        raise PreconditionError("no lifted points")
    pts = [vec(p) for p in lifted]
    dim = len(pts[0])
    if any(len(p) != dim for p in pts):
        raise DimensionMismatchError("lifted points of different dimensions")
    if len(set(pts)) == 1:
        raise PreconditionError("all lifted points are identical")
    up = tuple(Fraction(int(i == dim - 1)) for i in range(dim))
    poly = Polyhedron(pts, [up])
    out = []
    for h, gens in poly.facets:
        if h.normal[-1] > 0:
            out.append((frozenset(i for i in gens if i < len(pts)), h))
    out.sort(key=lambda f: sorted(f[0]))
    return out
