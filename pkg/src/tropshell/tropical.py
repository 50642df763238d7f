"""Tropical polynomials, hyperplane arrangements and covector decompositions.

Everything is in the min convention: ``F(x) = min_u (c_u + <u, x>)``.  A
matrix ``V`` (rows = coordinates, columns = points) defines the linear forms
``L_j(x) = min_i (x_i - v_ij)``; an entry ``-inf`` removes the term (its
coefficient would be ``+inf``).  Points of the tropical torus are represented
with the first coordinate pinned to 0.

A covector is a tuple ``(G_1, ..., G_d)`` of sets of (1-based) column indices.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Mapping, Sequence

from .complex import STAR, Cell, CellComplex, IsomorphismResult, compactify, label_id, poset_isomorphic, skeleton
from .errors import DimensionMismatchError, PreconditionError
from .kernel import Polyhedron, dot, vec
from .kernel.linalg import to_fraction
from .subdivision import PointConfiguration, dome, normal_complex, sample_point

NEG_INF = None  # marker for a -inf matrix entry


def exponent_label(u: Sequence[int]) -> str:
    """``(1, 1, 2) -> "112"``; entries outside 0..9 are separated by dots."""
    if all(0 <= c <= 9 for c in u):
        return "".join(str(c) for c in u)
    return ".".join(str(c) for c in u)


# -- polynomials ------------------------------------------------------------


class TropicalPolynomial:
    """``min_u (coeffs[u] + <u, x>)`` over a finite support of integer vectors."""

    def __init__(self, terms: Mapping[tuple, object] | Sequence, labels: Sequence[str] | None = None):
        items = list(terms.items()) if isinstance(terms, Mapping) else list(terms)
        if not items:
            raise PreconditionError("tropical polynomial without terms")
        self.support = [tuple(int(c) for c in u) for u, _ in items]
        self.coeffs = [to_fraction(c) for _, c in items]
        if len(set(self.support)) != len(self.support):
            raise PreconditionError("repeated exponent in tropical polynomial")
        self.dim = len(self.support[0])
        if any(len(u) != self.dim for u in self.support):
            raise DimensionMismatchError("exponents of different lengths")
        self.labels = [exponent_label(u) for u in self.support] if labels is None else [str(x) for x in labels]
        if len(set(self.labels)) != len(self.labels) or len(self.labels) != len(self.support):
            raise PreconditionError("labels must be unique, one per term")

    def __repr__(self):
        return f"TropicalPolynomial({len(self.support)} terms in {self.dim} variables)"

    def __eq__(self, other):
        if not isinstance(other, TropicalPolynomial):
            return NotImplemented
        return dict(zip(self.support, self.coeffs)) == dict(zip(other.support, other.coeffs))

    @property
    def homogeneous_degree(self) -> int | None:
        degs = {sum(u) for u in self.support}
        return degs.pop() if len(degs) == 1 else None

    def terms(self) -> dict:
        return dict(zip(self.support, self.coeffs))

    def __mul__(self, other: "TropicalPolynomial") -> "TropicalPolynomial":
        """Tropical product: exponents add, coefficients add, keep the minimum."""
        out: dict = {}
        for u, a in zip(self.support, self.coeffs):
            for w, b in zip(other.support, other.coeffs):
                e = tuple(x + y for x, y in zip(u, w))
                c = a + b
                if e not in out or c < out[e]:
                    out[e] = c
        return TropicalPolynomial(sorted(out.items()))

    def configuration(self) -> PointConfiguration:
        return PointConfiguration(self.support, self.coeffs, self.labels)


def evaluate(f: TropicalPolynomial, x: Sequence) -> tuple[Fraction, list]:
    """The value ``F(x)`` and every exponent attaining it."""
    x = vec(x)
    if len(x) != f.dim:
        raise DimensionMismatchError(f"point has {len(x)} coordinates, polynomial has {f.dim} variables")
    vals = [c + dot(u, x) for u, c in zip(f.support, f.coeffs)]
    m = min(vals)
    return m, [u for u, v in zip(f.support, vals) if v == m]


def homogeneous_quotient(f: TropicalPolynomial) -> TropicalPolynomial:
    """Drop the first exponent coordinate, i.e. restrict to ``x_1 = 0``.

    Labels keep the full exponents, so cells of the quotient are still named
    by the original monomials.
    """
    if f.homogeneous_degree is None:
        raise PreconditionError("polynomial is not homogeneous")
    if f.dim < 2:
        raise PreconditionError("quotient of a univariate polynomial is a point")
    return TropicalPolynomial([(u[1:], c) for u, c in zip(f.support, f.coeffs)], f.labels)


def _effective(f: TropicalPolynomial) -> TropicalPolynomial:
    return homogeneous_quotient(f) if f.homogeneous_degree is not None and f.dim >= 2 else f


def hypersurface(f: TropicalPolynomial) -> CellComplex:
    """One-point compactified tropical hypersurface: codimension-one skeleton of the
    compactified normal complex (after the quotient for homogeneous input)."""
    g = _effective(f)
    nc = compactify(normal_complex(g.configuration()))
    if g.dim < 1:
        raise PreconditionError("hypersurface of a polynomial in zero variables")
    return skeleton(nc, g.dim - 1)


# -- matrices ----------------------------------------------------------------


class TropicalMatrix:
    """``d x n`` matrix over the rationals and ``-inf`` (stored as ``None``)."""

    def __init__(self, rows: Sequence[Sequence]):
        self.rows = [[_entry(x) for x in r] for r in rows]
        if not self.rows or not self.rows[0]:
            raise PreconditionError("empty matrix")
        self.d = len(self.rows)
        self.n = len(self.rows[0])
        if any(len(r) != self.n for r in self.rows):
            raise DimensionMismatchError("ragged matrix")
        for j in range(self.n):
            if all(self.rows[i][j] is NEG_INF for i in range(self.d)):
                raise PreconditionError(f"column {j + 1} is entirely -inf")

    def __repr__(self):
        return f"TropicalMatrix({self.d}x{self.n})"

    def __eq__(self, other):
        return isinstance(other, TropicalMatrix) and self.rows == other.rows

    @property
    def full_support(self) -> bool:
        return all(x is not NEG_INF for r in self.rows for x in r)

    def entry(self, i: int, j: int):
        return self.rows[i][j]

    def column(self, j: int) -> list:
        return [self.rows[i][j] for i in range(self.d)]


def _entry(x):
    if x is None:
        return NEG_INF
    if isinstance(x, str) and x.strip().lower() == "-inf":
        return NEG_INF
    return to_fraction(x)


def linear_form(v: TropicalMatrix, j: int) -> TropicalPolynomial:
    """``L_j = min_i (x_i - v_ij)``, skipping ``-inf`` entries (0-based ``j``)."""
    terms = []
    for i in range(v.d):
        e = v.entry(i, j)
        if e is not NEG_INF:
            terms.append((tuple(int(k == i) for k in range(v.d)), -e))
    return TropicalPolynomial(terms)


def arrangement_polynomial(v: TropicalMatrix) -> TropicalPolynomial:
    """``L_V = L_1 * ... * L_n`` (tropical product)."""
    f = linear_form(v, 0)
    for j in range(1, v.n):
        f = f * linear_form(v, j)
    return f


def covector(v: TropicalMatrix, x: Sequence) -> tuple:
    """``G_i(x) = {j : x_i - v_ij is minimal among x_k - v_kj}``, ``j`` 1-based."""
    x = vec(x)
    if len(x) != v.d:
        raise DimensionMismatchError(f"point has {len(x)} coordinates, matrix has {v.d} rows")
    g = [set() for _ in range(v.d)]
    for j in range(v.n):
        vals = {i: x[i] - v.entry(i, j) for i in range(v.d) if v.entry(i, j) is not NEG_INF}
        m = min(vals.values())
        for i, val in vals.items():
            if val == m:
                g[i].add(j + 1)
    return tuple(frozenset(s) for s in g)


def coarse_type(cov: Sequence) -> tuple:
    return tuple(len(s) for s in cov)


def covector_cell(v: TropicalMatrix, h: Sequence) -> Polyhedron | None:
    """``X_H = {x : G(x) contains H}`` in coordinates ``(x_2, ..., x_d)`` with ``x_1 = 0``.

    Returns ``None`` when the cell is empty.
    """
    if len(h) != v.d:
        raise DimensionMismatchError("covector length differs from the number of rows")
    from .kernel import Halfspace

    dim = v.d - 1
    hs = []

    def lin(i):  # x_i as a linear functional on the quotient coordinates
        return tuple(Fraction(int(k == i - 1)) for k in range(dim)) if i > 0 else (Fraction(0),) * dim

    for i, js in enumerate(h):
        for j in js:
            if not 1 <= j <= v.n:
                raise PreconditionError(f"column index {j} out of range")
            vi = v.entry(i, j - 1)
            if vi is NEG_INF:
                return None  # x_i - (-inf) is never minimal
            for k in range(v.d):
                vk = v.entry(k, j - 1)
                if k == i or vk is NEG_INF:
                    continue
                # x_k - x_i >= v_kj - v_ij
                normal = tuple(a - b for a, b in zip(lin(k), lin(i)))
                if any(normal):
                    hs.append(Halfspace(normal, vk - vi))
                elif vk - vi > 0:
                    return None
    if not hs:
        raise PreconditionError("covector imposes no condition; the cell is the whole torus")
    return Polyhedron.from_inequalities(hs)


def lift_point(x: Sequence) -> tuple:
    """Quotient coordinates to a torus representative with ``x_1 = 0``."""
    return (Fraction(0),) + tuple(vec(x))


def covector_decomposition(v: TropicalMatrix) -> CellComplex:
    """Normal complex of ``L_V`` in quotient coordinates; ids are exponent labels."""
    return normal_complex(homogeneous_quotient(arrangement_polynomial(v)).configuration())


def covector_labels(v: TropicalMatrix, cx: CellComplex) -> dict:
    """Covector of every finite cell, read off at its sample point."""
    return {c.id: covector(v, lift_point(sample_point(cx, c.id))) for c in cx if not c.is_star}


def maximal_coarse_types(v: TropicalMatrix, cx: CellComplex) -> dict:
    """Coarse type of each maximal cell, checked against the cell's exponent label."""
    out = {}
    for cid in cx.maximal_cells():
        if cx.cells[cid].is_star:
            continue
        ct = coarse_type(covector(v, lift_point(sample_point(cx, cid))))
        if exponent_label(ct) != cid:
            raise AssertionError(f"cell {cid} has coarse type {ct}")
        out[cid] = ct
    return out


def tropical_polytope(v: TropicalMatrix) -> CellComplex:
    """Bounded covector cells: the tropical convex hull of the columns."""
    return covector_decomposition(v).bounded_subcomplex()


# -- tropical projective space ---------------------------------------------


@dataclass(frozen=True)
class Stratum:
    z: frozenset
    closed: bool = True

    @property
    def id(self) -> str:
        return "Z" + label_id(str(i) for i in self.z)


def closed_stratum(z: Sequence[int], d: int) -> list[Stratum]:
    """The relatively open strata ``Z'`` with ``Z <= Z' < [d]`` making up the closed ``Z``-stratum."""
    z = frozenset(z)
    if not z or len(z) >= d:
        raise PreconditionError("stratum index set must be nonempty and proper")
    rest = [i for i in range(1, d + 1) if i not in z]
    out = []
    for k in range(len(rest)):
        for extra in combinations(rest, k):
            out.append(Stratum(z | frozenset(extra), closed=False))
    return out


def cell_closure(v: TropicalMatrix, cell_id: str, cx: CellComplex | None = None) -> list[Stratum]:
    """Strata in the closure of a maximal covector cell, from its coarse type.

    Bounded cells have none; an unbounded cell of coarse type ``u`` picks up
    the closed stratum on ``Z = {i : u_i != 0}``.
    """
    if not v.full_support:
        raise PreconditionError("cell closures are only described for matrices with full support")
    cx = cx if cx is not None else covector_decomposition(v)
    if cell_id not in cx.maximal_cells():
        raise PreconditionError(f"{cell_id!r} is not a maximal covector cell")
    if cx.cells[cell_id].bounded:
        return []
    u = maximal_coarse_types(v, cx)[cell_id]
    z = [i + 1 for i, c in enumerate(u) if c != 0]
    return closed_stratum(z, v.d)


def ray_direction_index(x_dir: Sequence) -> int | None:
    """``j`` if the quotient direction is ``e_j`` modulo ``(1, ..., 1)``, else ``None``."""
    full = (Fraction(0),) + tuple(x_dir)
    hi = max(full)
    top = [i for i, c in enumerate(full) if c == hi]
    if len(top) != 1:
        return None
    others = {c for i, c in enumerate(full) if i != top[0]}
    return top[0] + 1 if len(others) == 1 else None


def _closure_stratum_of(cx: CellComplex, cid: str, d: int) -> frozenset | None:
    rays = set()
    for c in cx.closure(cid):
        rays |= cx.cells[c].rays
    if not rays:
        return None
    js = set()
    for r in rays:
        j = ray_direction_index(cx.ray_dirs[r])
        if j is None:
            raise PreconditionError(f"ray {cx.ray_dirs[r]} is not a coordinate direction; full support fails")
        js.add(j)
    return frozenset(range(1, d + 1)) - js


def projective_covector_complex(v: TropicalMatrix) -> CellComplex:
    """Closure of the covector decomposition in tropical projective space, as an abstract complex.

    Cells are the covector cells plus one cell per stratum ``Z`` (nonempty,
    proper), of dimension ``d - 1 - |Z|``.  An unbounded cell whose closure
    reaches the closed ``Z``-stratum gets it as a boundary cell when the
    dimensions fit.
    """
    if not v.full_support:
        raise PreconditionError(
            "projective closure needs full support; without it the face at infinity of the dome need not be a "
            "simplex (see face_at_infinity)"
        )
    d = v.d
    cx = covector_decomposition(v)
    cells = [c for c in cx]
    strata: dict[frozenset, str] = {}
    for k in range(1, d):
        for z in combinations(range(1, d + 1), k):
            strata[frozenset(z)] = Stratum(frozenset(z)).id
    for z, sid in strata.items():
        bd = frozenset(strata[z | {i}] for i in range(1, d + 1) if i not in z and len(z) + 1 < d)
        cells.append(Cell(sid, d - 1 - len(z), boundary=bd))
    out = []
    for c in cells:
        if c.id in cx.cells and not c.bounded:
            z = _closure_stratum_of(cx, c.id, d)
            if d - 1 - len(z) == c.dim - 1:
                c = Cell(c.id, c.dim, c.vertices, c.rays, c.boundary | {strata[z]})
        out.append(c)
    pcx = CellComplex(out, cx.vertex_coords, cx.ray_dirs)
    bad = pcx.cell_sphere_check()
    if bad:
        raise AssertionError(f"projective cells with non-spherical boundary: {bad}")
    return pcx


@dataclass
class FaceAtInfinity:
    n_vertices: int
    dim: int
    is_simplex: bool
    ray_directions: list


def face_at_infinity(v: TropicalMatrix) -> FaceAtInfinity:
    """The face of the (quotient) dome at infinity, i.e. its recession cone up to scaling."""
    poly = dome(homogeneous_quotient(arrangement_polynomial(v)).configuration())
    rays = [tuple(r) for r in poly.rays]
    cone = Polyhedron([tuple(Fraction(0) for _ in rays[0])], rays)
    dim = cone.dim - 1
    return FaceAtInfinity(len(rays), dim, len(rays) == dim + 1, rays)


def schlegel_diagram(v: TropicalMatrix) -> CellComplex:
    """Boundary of the dome, with the face at infinity added, minus that face's interior.

    Dome faces keep their label ids.  A face of the face at infinity is named
    ``"inf:"`` followed by the coordinate directions of its rays.
    """
    g = homogeneous_quotient(arrangement_polynomial(v))
    cfg = g.configuration()
    poly = dome(cfg)
    origin = tuple(Fraction(0) for _ in range(poly.ambient_dim))
    cone = Polyhedron([origin], poly.rays)
    ray_name = {}
    for j, r in enumerate(poly.rays):
        idx = ray_direction_index(r[:-1])
        ray_name[j] = str(idx) if idx is not None else f"r{j}"
    inf_faces = {}
    for f in cone.faces:
        if 1 <= f.dim < cone.dim:
            inf_faces[f.rays] = ("inf:" + label_id(ray_name[j] for j in f.rays), f.dim - 1)
    cells = []
    for rays, (cid, dim) in inf_faces.items():
        bd = frozenset(inf_faces[r][0] for r in inf_faces if r < rays and inf_faces[r][1] == dim - 1)
        cells.append(Cell(cid, dim, boundary=bd))
    from .subdivision import _tight_labels

    proper = poly.proper_faces()
    ids = {f: label_id(_tight_labels(cfg, poly, f)) for f in proper}
    for f in proper:
        bd = {ids[h] for h in proper if h.dim == f.dim - 1 and h <= f}
        if f.rays in inf_faces and inf_faces[f.rays][1] == f.dim - 1:
            bd.add(inf_faces[f.rays][0])
        cells.append(Cell(ids[f], f.dim, boundary=frozenset(bd)))
    return CellComplex(cells)


def projective_isomorphism(v: TropicalMatrix) -> IsomorphismResult:
    """Search for the combinatorial equivalence between the projective covector
    complex and the Schlegel diagram, seeded on the facets at infinity."""
    pcx = projective_covector_complex(v)
    sch = schlegel_diagram(v)
    d = v.d
    seed = {}
    for i in range(1, d + 1):
        facet = "inf:" + label_id(str(j) for j in range(1, d + 1) if j != i)
        if facet in sch and d > 1:
            seed[Stratum(frozenset([i])).id] = facet
    return poset_isomorphic(pcx, sch, seed)


# -- genericity -------------------------------------------------------------


def tropically_generic(v: TropicalMatrix) -> bool:
    """No square submatrix has its tropical determinant attained twice (full support only).

    The linear forms carry the coefficients ``-v_ij``, so the determinant that
    matters is the minimum over permutations of ``-sum v``, i.e. the maximum
    of the permutation sums of ``V``.
    """
    from itertools import permutations

    if not v.full_support:
        raise PreconditionError("genericity test needs full support")
    for k in range(2, min(v.d, v.n) + 1):
        for rows in combinations(range(v.d), k):
            for cols in combinations(range(v.n), k):
                vals = [sum(v.entry(r, c) for r, c in zip(rows, perm)) for perm in permutations(cols)]
                m = max(vals)
                if vals.count(m) > 1:
                    return False
    return True


__all__ = [
    "NEG_INF",
    "STAR",
    "Stratum",
    "TropicalMatrix",
    "TropicalPolynomial",
    "arrangement_polynomial",
    "cell_closure",
    "closed_stratum",
    "coarse_type",
    "covector",
    "covector_cell",
    "covector_decomposition",
    "covector_labels",
    "evaluate",
    "exponent_label",
    "face_at_infinity",
    "homogeneous_quotient",
    "hypersurface",
    "lift_point",
    "linear_form",
    "maximal_coarse_types",
    "projective_covector_complex",
    "projective_isomorphism",
    "schlegel_diagram",
    "tropical_polytope",
    "tropically_generic",
]
