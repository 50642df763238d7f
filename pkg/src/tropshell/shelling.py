"""Shellings: verification, brute force, and line constructions.

The verifier implements the nonpure conditions (S1)-(S3) literally.  For a
maximal cell ``s_j`` the intersection with earlier cells is

    K_j = closure(boundary(s_j))  cap  union_{k<j} closure(boundary(s_k))

which must be pure of dimension ``dim s_j - 1``, and the boundary of ``s_j``
must admit a shelling that starts with the facets in ``K_j``.  The latter is a
recursive question about a sphere; it is answered by a subset search over the
facets of the cell, memoized on ``(cell, prefix)``.

The constructors order facets of a polyhedron by where a line meets their
hyperplanes.  Lines are perturbed symbolically, so ties never depend on a
numeric epsilon.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .complex import CellComplex, boundary_complex, compactify, face_ids
from .errors import BudgetExceededError, ConstructionError, NonGenericError, PreconditionError
from .kernel import EpsRatio, EpsVector, Polyhedron, dot, moment_direction, vec
from .kernel.linalg import centroid, rank, sub

CONSTRUCTIONS = ("line", "vertical-desc", "vertical-asc", "lex-coarse", "manual", "brute")


@dataclass
class ShellingOrder:
    order: list
    complex_ref: str = ""
    construction: str = "manual"

    def __post_init__(self):
        self.order = list(self.order)
        if self.construction not in CONSTRUCTIONS:
            raise PreconditionError(f"unknown construction tag {self.construction!r}")

    def __iter__(self):
        return iter(self.order)

    def __len__(self):
        return len(self.order)


@dataclass
class ShellingReport:
    valid: bool
    condition: str | None = None  # "S1", "S2" or "S3"
    index: int | None = None  # 1-based position in the order
    cell: str | None = None
    message: str = ""

    def __bool__(self):
        return self.valid


class _Shellability:
    """Memoized boundary-shelling queries on one complex."""

    def __init__(self, cx: CellComplex):
        self.cx = cx
        self.memo: dict = {}

    def is_simplex(self, cid: str) -> bool:
        c = self.cx.cells[cid]
        return len(self.cx.closure_vertices(cid)) == c.dim + 1 and all(self.is_simplex(b) for b in c.boundary)

    def intersection(self, cid: str, placed: Iterable[str]) -> frozenset:
        acc = set()
        for p in placed:
            acc |= self.cx.boundary_closure(p)
        return self.cx.boundary_closure(cid) & frozenset(acc)

    def pure_of_dim(self, ids: frozenset, k: int) -> bool:
        """Every maximal element of the subcomplex ``ids`` has dimension ``k``."""
        if k < 0:
            return not ids
        if not ids:
            return False
        for i in ids:
            c = self.cx.cells[i]
            if c.dim < k and not any(u in ids for u in self.cx.coboundary[i]):
                return False
            if c.dim > k:
                return False
        return True

    def facet_prefix(self, cid: str, k_ids: frozenset) -> frozenset:
        return frozenset(b for b in self.cx.cells[cid].boundary if b in k_ids)

    def boundary_shellable(self, cid: str, prefix: frozenset) -> bool:
        """Is there a shelling of the boundary of ``cid`` that starts with ``prefix``?"""
        c = self.cx.cells[cid]
        if c.dim <= 1:
            return True  # boundary is 0-dimensional: any order
        key = (cid, prefix)
        if key in self.memo:
            return self.memo[key]
        if self.is_simplex(cid):
            self.memo[key] = True
            return True
        facets = sorted(c.boundary)
        full = frozenset(facets)
        # reachable placed-sets; prefix facets must all come before the rest
        reachable = {frozenset()}
        frontier = [frozenset()]
        ok = False
        while frontier and not ok:
            nxt = []
            for placed in frontier:
                if placed >= prefix:
                    cand = [f for f in facets if f not in placed]
                else:
                    cand = [f for f in facets if f in prefix and f not in placed]
                for f in cand:
                    new = placed | {f}
                    if new in reachable:
                        continue
                    if self.can_add(f, placed):
                        reachable.add(new)
                        if new == full:
                            ok = True
                            break
                        nxt.append(new)
                if ok:
                    break
            frontier = nxt
        self.memo[key] = ok
        return ok

    def can_add(self, cid: str, placed: frozenset) -> bool:
        """Can ``cid`` follow the cells ``placed`` in a shelling?"""
        if not placed:
            return self.boundary_shellable(cid, frozenset())
        k = self.intersection(cid, placed)
        dim = self.cx.cells[cid].dim
        if not self.pure_of_dim(k, dim - 1):
            return False
        return self.boundary_shellable(cid, self.facet_prefix(cid, k))


def verify_shelling(cx: CellComplex, order: ShellingOrder | Sequence[str]) -> ShellingReport:
    seq = list(order.order if isinstance(order, ShellingOrder) else order)
    maximal = set(cx.maximal_cells())
    if len(seq) != len(set(seq)) or set(seq) != maximal:
        extra = sorted(set(seq) - maximal)
        missing = sorted(maximal - set(seq))
        raise PreconditionError(
            f"order is not a permutation of the maximal cells (unexpected {extra}, missing {missing})"
        )
    if cx.dim <= 0:
        return ShellingReport(True)
    sh = _Shellability(cx)
    placed: set = set()
    for j, cid in enumerate(seq, start=1):
        dim = cx.cells[cid].dim
        if j == 1:
            if not sh.boundary_shellable(cid, frozenset()):
                return ShellingReport(False, "S1", 1, cid, f"boundary of {cid} has no shelling")
        else:
            k = sh.intersection(cid, placed)
            if not sh.pure_of_dim(k, dim - 1):
                return ShellingReport(
                    False, "S2", j, cid, f"intersection of {cid} with earlier cells is not pure of dimension {dim - 1}"
                )
            if not sh.boundary_shellable(cid, sh.facet_prefix(cid, k)):
                return ShellingReport(
                    False, "S3", j, cid, f"boundary of {cid} has no shelling starting with its intersection"
                )
        placed.add(cid)
    return ShellingReport(True)


def _budget(default: int) -> int:
    env = os.environ.get("TROPSHELL_BUDGET")
    return int(env) if env else default


@dataclass
class BruteForceResult:
    order: ShellingOrder | None
    exhausted: bool
    states: int = 0

    @property
    def shellable(self) -> bool:
        return self.order is not None


def brute_force_shellability(cx: CellComplex, max_cells: int | None = None) -> BruteForceResult:
    """Search all orders of the maximal cells, by dynamic programming over subsets.

    A placed set of cells determines whether a further cell may follow, so
    the search visits each subset at most once.  ``exhausted=True`` with no
    order is a proof that the complex is not shellable.
    """
    max_cells = _budget(16) if max_cells is None else max_cells
    maximal = sorted(cx.maximal_cells())
    m = len(maximal)
    if m > max_cells:
        raise BudgetExceededError(f"{m} maximal cells exceed the budget of {max_cells}", explored=0)
    if m <= 1 or cx.dim <= 0:
        order = list(maximal)
        if m == 1 and cx.dim > 0 and not _Shellability(cx).boundary_shellable(maximal[0], frozenset()):
            return BruteForceResult(None, True, 1)
        return BruteForceResult(ShellingOrder(order, construction="brute"), True, 1)
    sh = _Shellability(cx)
    full = frozenset(maximal)
    parent: dict = {frozenset(): None}
    frontier = [frozenset()]
    states = 1
    while frontier:
        nxt = []
        for placed in frontier:
            for cid in maximal:
                if cid in placed:
                    continue
                new = placed | {cid}
                if new in parent:
                    continue
                if sh.can_add(cid, placed):
                    parent[new] = (placed, cid)
                    states += 1
                    if new == full:
                        order = []
                        cur = new
                        while parent[cur] is not None:
                            prev, c = parent[cur]
                            order.append(c)
                            cur = prev
                        return BruteForceResult(ShellingOrder(order[::-1], construction="brute"), True, states)
                    nxt.append(new)
        frontier = nxt
    return BruteForceResult(None, True, states)


# -- lines ----------------------------------------------------------------


@dataclass
class LineSpec:
    """The line ``base + lambda * direction`` with an eps-perturbed direction."""

    base: tuple
    direction: list = field(default_factory=list)

    def __post_init__(self):
        self.base = vec(self.base)
        self.direction = [EpsVector.lift(c) for c in self.direction]
        if len(self.direction) != len(self.base):
            raise PreconditionError("base point and direction have different lengths")

    @classmethod
    def perturbed(cls, base, direction, start_power: int = 1) -> "LineSpec":
        """Direction ``direction + (eps, eps^2, ...)``."""
        eta = moment_direction(len(direction), start_power)
        return cls(base, [EpsVector.constant(c) + e for c, e in zip(vec(direction), eta)])

    def reversed(self) -> "LineSpec":
        return LineSpec(self.base, [-c for c in self.direction])


def _parameters(poly: Polyhedron, spec: LineSpec):
    """``lambda`` for each facet hyperplane; ``None`` if the line is parallel to it."""
    out = []
    for h, gens in poly.facets:
        slack = h.slack(spec.base)
        if slack <= 0:
            raise PreconditionError("base point of the line is not in the interior")
        den = EpsVector()
        for a, c in zip(h.normal, spec.direction):
            if a:
                den = den + c * a
        out.append((gens, None if den.is_zero() else EpsRatio(EpsVector.constant(-slack), den)))
    return out


def _line_sequence(poly: Polyhedron, spec: LineSpec):
    """Facet generator sets in line order plus the position of the parallel slot."""
    params = _parameters(poly, spec)
    parallel = [g for g, lam in params if lam is None]
    if len(parallel) > 1:
        raise NonGenericError("line is parallel to more than one facet hyperplane")
    pos = [(lam, g) for g, lam in params if lam is not None and lam.sign() > 0]
    neg = [(lam, g) for g, lam in params if lam is not None and lam.sign() < 0]
    for group in (pos, neg):
        _check_distinct([lam for lam, _ in group])
    key = _ratio_sort_key
    pos.sort(key=key)
    neg.sort(key=key)
    return [g for _, g in pos], parallel, [g for _, g in neg]


class _RatioKey:
    __slots__ = ("r",)

    def __init__(self, r):
        self.r = r

    def __lt__(self, other):
        return self.r < other.r


def _ratio_sort_key(item):
    return _RatioKey(item[0])


def _check_distinct(values):
    vals = sorted(values, key=_RatioKey)
    for a, b in zip(vals, vals[1:]):
        if a == b:
            raise NonGenericError("two facet hyperplanes meet the line in the same point")


def _facet_ids(poly: Polyhedron, labels):
    faces = poly.proper_faces()
    ids, _, _ = face_ids(poly, faces, labels)
    by_gens = {}
    npts = len(poly.points)
    for f in faces:
        by_gens[frozenset(f.points) | frozenset(npts + j for j in f.rays)] = ids[f]
    return by_gens


def _default_labels(poly):
    return [str(i + 1) for i in range(len(poly.points))]


def facet_toward(poly: Polyhedron, facet_gens: frozenset, base=None) -> LineSpec:
    """A line from an interior point through the barycenter of a facet, perturbed."""
    base = vec(base) if base is not None else _interior(poly)
    npts = len(poly.points)
    pts = [poly.points[i] for i in facet_gens if i < npts]
    target = centroid(pts)
    for j in facet_gens:
        if j >= npts:
            target = tuple(a + b for a, b in zip(target, poly.rays[j - npts]))
    return LineSpec.perturbed(base, sub(target, base))


def _interior(poly: Polyhedron) -> tuple:
    if poly.dim != poly.ambient_dim:
        raise PreconditionError("polyhedron is not full-dimensional")
    verts = [poly.points[i] for i in poly.vertex_indices()]
    x = centroid(verts)
    for r in poly.rays:
        x = tuple(a + b for a, b in zip(x, r))
    return x


def line_shelling(poly: Polyhedron, spec: LineSpec | None = None, labels=None, first=None) -> ShellingOrder:
    """Facets of a polytope in the order a generic line meets them.

    Forward intersections by increasing parameter, then the backward ones
    from far away toward the base point.  Ids follow :func:`boundary_complex`.
    """
    if not poly.bounded:
        raise PreconditionError("line_shelling needs a polytope; use unbounded_line_shelling")
    if poly.dim != poly.ambient_dim:
        raise PreconditionError("polytope is not full-dimensional")
    labels = list(labels) if labels is not None else _default_labels(poly)
    ids = _facet_ids(poly, labels)
    if spec is None:
        inv = {v: k for k, v in ids.items()}
        target = inv[first] if first is not None else poly.facets[0][1]
        if target not in {g for _, g in poly.facets}:
            raise PreconditionError(f"{first!r} is not a facet")
        spec = facet_toward(poly, target)
    pos, parallel, neg = _line_sequence(poly, spec)
    seq = pos + parallel + neg
    return ShellingOrder([ids[g] for g in seq], "#boundary", "line")


def unbounded_line_shelling(
    poly: Polyhedron, spec: LineSpec | None = None, labels=None, first=None
) -> ShellingOrder:
    """Line shelling of the compactified boundary of a pointed polyhedron.

    Only recession cones of dimension 1 or full dimension are accepted; in
    between, the compactification of a shelling need not be a shelling and
    the caller should verify an explicit order instead.

    With a full-dimensional cone the line must leave through the cone, so
    that the face at infinity comes last.  Even then, collapsing that face to
    the star may glue cells that were disjoint, so without an explicit
    ``spec`` the base point runs through a fixed list of points near the
    first facet and the first order that verifies on the compactified
    boundary is returned.
    """
    if poly.bounded:
        return line_shelling(poly, spec, labels, first)
    d = poly.ambient_dim
    if poly.dim != d:
        raise PreconditionError("polyhedron is not full-dimensional")
    rdim = rank(poly.rays)
    if 1 < rdim < d:
        raise PreconditionError(
            f"recession cone has dimension {rdim}; line shellings are only guaranteed for dimension 1 or {d}. "
            "Verify an explicit order with verify_shelling instead."
        )
    labels = list(labels) if labels is not None else _default_labels(poly)
    ids = _facet_ids(poly, labels)
    inv = {v: k for k, v in ids.items()}
    facet_sets = [g for _, g in poly.facets]
    if first is not None and first not in inv:
        raise PreconditionError(f"{first!r} is not a facet")

    def run(line):
        pos, parallel, neg = _line_sequence(poly, line)
        if rdim == d and (neg or parallel):
            raise PreconditionError(
                "with a full-dimensional recession cone the line must leave the polyhedron through the cone "
                "(all intersections forward) so that the face at infinity comes last"
            )
        return [ids[g] for g in pos + parallel + neg]

    if spec is not None:
        return ShellingOrder(run(spec), "#boundary-compactified", "line")
    if rdim < d:
        target = inv[first] if first is not None else facet_sets[0]
        return ShellingOrder(run(facet_toward(poly, target)), "#boundary-compactified", "line")
    target_ids = [first] if first is not None else [ids[g] for g in facet_sets]
    cx = compactify(boundary_complex(poly, labels))
    for tid in target_ids:
        for line in _lines_behind(poly, inv[tid]):
            order = run(line)
            if order[0] == tid and verify_shelling(cx, order).valid:
                return ShellingOrder(order, "#boundary-compactified", "line")
    raise ConstructionError("no line in the searched family gives a shelling of the compactified boundary")


def _facet_points(poly: Polyhedron, gens: frozenset):
    """Relative-interior points of a facet: barycenter, near each vertex, far along its rays."""
    npts = len(poly.points)
    pts = [poly.points[i] for i in sorted(gens) if i < npts]
    rays = [poly.rays[j - npts] for j in sorted(gens) if j >= npts]
    bary = centroid(pts)
    for r in rays:
        bary = tuple(a + b for a, b in zip(bary, r))
    yield bary
    vset = set(poly.vertex_indices())
    for i in sorted(gens):
        if i < npts and i in vset:
            for s in (Fraction(1, 10), Fraction(1, 1000)):
                yield tuple(x + s * (b - x) for x, b in zip(poly.points[i], bary))
    for r in rays:
        for k in (10, 1000):
            yield tuple(b + k * c for b, c in zip(bary, r))


def _lines_behind(poly: Polyhedron, target: frozenset):
    """Lines that cross ``target`` first and then run off inside the recession cone."""
    cone = [Fraction(0)] * poly.ambient_dim
    for r in poly.rays:
        cone = [a + b for a, b in zip(cone, r)]
    for p in _facet_points(poly, target):
        t = Fraction(1)
        while True:
            o = tuple(b + t * c for b, c in zip(p, cone))
            if all(h.slack(o) > 0 for h in poly.inequalities):
                break
            t *= 2
        yield LineSpec.perturbed(o, [-c for c in cone])


# -- subdivisions and normal complexes ------------------------------------


def _lift_sample(sigma: CellComplex, cid: str) -> tuple:
    from .subdivision import sample_point

    return sample_point(sigma, cid)


def subdivision_shelling(cfg, first: str | None = None) -> ShellingOrder:
    """Maximal cells of the regular subdivision by a near-vertical descending line.

    The line starts above an interior point of the requested first cell and
    heads down, tilted by ``(eps, eps^2, ...)``; the lower facets it meets, in
    order, are the shelling.
    """
    from .subdivision import extended_newton, regular_subdivision

    sigma = regular_subdivision(cfg)
    maximal = sorted(sigma.maximal_cells())
    first = maximal[0] if first is None else first
    if first not in maximal:
        raise PreconditionError(f"{first!r} is not a maximal cell of the subdivision")
    u = extended_newton(cfg)
    d = cfg.dim
    x = _lift_sample(sigma, first)
    value = _height_over(u, x)
    base = x + (value + 1,)
    down = [Fraction(0)] * d + [Fraction(-1)]
    spec = LineSpec.perturbed(base, down)
    pos, parallel, neg = _line_sequence(u, spec)
    npts = len(u.points)
    lower_ids = {}
    for h, gens in u.facets:
        if h.normal[-1] > 0:
            lower_ids[gens] = _label_of(cfg, gens, npts)
    order = [lower_ids[g] for g in pos if g in lower_ids]
    if len(order) != len(lower_ids):
        raise NonGenericError("some lower facet was not met in the forward direction")
    if order[0] != first:
        raise NonGenericError("the line did not meet the requested first cell first")
    return ShellingOrder(order, "#subdivision", "vertical-desc")


def _label_of(cfg, gens, npts):
    from .complex import label_id

    return label_id(cfg.labels[i] for i in gens if i < npts)


def _height_over(u: Polyhedron, x) -> Fraction:
    """Height of the lower hull of ``u`` above ``x``."""
    best = None
    for h, _ in u.facets:
        if h.normal[-1] > 0:
            s = (h.offset - dot(h.normal[:-1], x)) / h.normal[-1]
            best = s if best is None or s > best else best
    return best


def normal_complex_shelling(cfg, first: str | None = None) -> ShellingOrder:
    """Maximal cells of the compactified normal complex by a near-vertical ascending line.

    The line starts just below the dome, over a point ``x`` of the requested
    first cell, and heads up; it meets the facets in the order of the term
    values at ``x``.  The whole backward ray lies in the dome, so the face at
    infinity would come last.

    Collapsing that full-dimensional face to the star can glue two cells that
    were disjoint, and then the order is no longer a shelling.  So ``x`` runs
    through a fixed list of points of the first cell (barycenter, points near
    each vertex, points far out along each ray) and the first order that
    verifies is returned.
    """
    from .complex import compactify
    from .subdivision import normal_complex

    nc = normal_complex(cfg)
    maximal = sorted(nc.maximal_cells())
    first = maximal[0] if first is None else first
    if first not in maximal:
        raise PreconditionError(f"{first!r} is not a maximal cell of the normal complex")
    target = compactify(nc) if any(not c.bounded for c in nc) else nc
    tried = 0
    for x in cell_points(nc, first):
        order = _ascending_order(cfg, x)
        if order[0] != first:
            continue
        tried += 1
        if verify_shelling(target, order).valid:
            return ShellingOrder(order, "#normal-complex-compactified", "vertical-asc")
    raise ConstructionError(f"none of {tried} ascending lines over cell {first!r} gives a shelling")


def cell_points(cx: CellComplex, cid: str):
    """Relative-interior points of a cell: barycenter, near each vertex, far along each ray."""
    from .subdivision import sample_point

    b = sample_point(cx, cid)
    yield b
    for v in sorted(cx.closure_vertices(cid)):
        if v not in cx.vertex_coords:
            continue
        x = cx.vertex_coords[v]
        for s in (Fraction(1, 10), Fraction(1, 1000)):
            yield tuple(xi + s * (bi - xi) for xi, bi in zip(x, b))
    rays = set()
    for c in cx.closure(cid):
        rays |= cx.cells[c].rays
    for r in sorted(rays):
        for k in (10, 1000):
            yield tuple(bi + k * ri for bi, ri in zip(b, cx.ray_dirs[r]))


def _ascending_order(cfg, x) -> list:
    from .subdivision import dome

    value, _ = cfg.evaluate(x)
    spec = LineSpec.perturbed(tuple(x) + (value - 1,), [Fraction(0)] * cfg.dim + [Fraction(1)])
    poly = dome(cfg)
    pos, parallel, neg = _line_sequence(poly, spec)
    if neg or parallel:
        raise NonGenericError("ascending line met a dome facet backwards")
    return [_dome_facet_id(cfg, poly, g) for g in pos]


def _dome_facet_id(cfg, poly, gens) -> str:
    from .complex import label_id

    npts = len(poly.points)
    pts = [poly.points[i] for i in gens if i < npts]
    rays = [poly.rays[i - npts] for i in gens if i >= npts]
    labs = []
    for lab, p, h in zip(cfg.labels, cfg.points, cfg.heights):
        normal = p + (Fraction(-1),)
        if all(dot(normal, x) == -h for x in pts) and all(dot(normal, r) == 0 for r in rays):
            labs.append(lab)
    return label_id(labs)


def polytope_boundary_order_complex(poly: Polyhedron, labels=None) -> CellComplex:
    """The complex that line-shelling ids refer to (compactified when unbounded)."""
    cx = boundary_complex(poly, labels)
    return cx if poly.bounded else compactify(cx)



# -- tropical arrangements ------------------------------------------------


def lex_coarse_type_shelling(v) -> ShellingOrder:
    """Maximal cells of the compactified covector decomposition in lex order of coarse types."""
    from .tropical import covector_decomposition, maximal_coarse_types

    cx = covector_decomposition(v)
    types = maximal_coarse_types(v, cx)
    return ShellingOrder(sorted(types, key=types.get), "#covdec-compactified", "lex-coarse")


def lex_line_order(v, w=None) -> list[str]:
    """The same order, read off a line through the dome.

    The line is ``(w, t) + lambda * (eps, eps^2, ..., eps^(d+1))`` in full
    coordinates, projected along the lineality ``(1, ..., 1, n)``.  The base
    height ``t = -eps^(-K)`` sinks faster than any term that matters, so
    scaling all parameters by ``eps^K`` keeps their order and leaves only
    polynomials in ``eps``.
    """
    from .tropical import arrangement_polynomial, homogeneous_quotient
    from .subdivision import dome

    g = homogeneous_quotient(arrangement_polynomial(v))
    cfg = g.configuration()
    poly = dome(cfg)
    d, n = v.d, v.n
    k = d + 2
    w = tuple(Fraction(0) for _ in range(d - 1)) if w is None else vec(w)
    eps = [EpsVector.monomial(i) for i in range(d + 2)]
    direction = [eps[i] - eps[1] for i in range(2, d + 1)] + [eps[d + 1] - eps[1] * n]
    keyed = []
    for h, gens in poly.facets:
        den = EpsVector()
        for a, c in zip(h.normal, direction):
            if a:
                den = den + c * a
        if den.is_zero():
            raise NonGenericError("lex line is parallel to a dome facet")
        num = EpsVector.monomial(k, h.offset - dot(h.normal[:-1], w)) + h.normal[-1]
        lam = EpsRatio(num, den)
        if lam.sign() >= 0:
            raise NonGenericError("lex line meets a dome facet in the forward direction")
        keyed.append((lam, _dome_facet_id(cfg, poly, gens)))
    keyed.sort(key=_ratio_sort_key)
    _check_distinct([lam for lam, _ in keyed])
    return [cid for _, cid in keyed]
