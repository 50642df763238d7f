"""Discrete Morse theory on cell posets.

A matching pairs a cell with one of its facets.  It is acyclic when the Hasse
digraph, with the matched arcs reversed, has no directed cycle; unmatched
cells are critical.  The main pipeline turns a line shelling of a regular
subdivision into a collapse of its tight span:

    shelling of Sigma -> ball matching (restricting to the boundary sphere)
    -> Sigma_+ (glue in the polytope itself) -> dual poset -> interior cells
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import networkx as nx

from .complex import Cell, CellComplex, boundary_subcomplex_ids, euler_characteristic
from .errors import BudgetExceededError, ConstructionError, PreconditionError

DELTA = "delta"


@dataclass(frozen=True)
class AcyclicMatching:
    pairs: frozenset  # of (facet, cell)
    critical: frozenset

    @classmethod
    def from_pairs(cls, cx: CellComplex, pairs: Iterable[Sequence[str]]) -> "AcyclicMatching":
        pairs = frozenset((a, b) for a, b in pairs)
        used = {c for p in pairs for c in p}
        return cls(pairs, frozenset(c for c in cx.cells if c not in used))

    def partner(self) -> dict:
        out = {}
        for a, b in self.pairs:
            out[a] = b
            out[b] = a
        return out

    def critical_by_dim(self, cx: CellComplex) -> dict[int, list]:
        out: dict[int, list] = {}
        for c in sorted(self.critical):
            out.setdefault(cx.cells[c].dim, []).append(c)
        return out

    def restrict(self, cx: CellComplex, ids: Iterable[str]) -> "AcyclicMatching":
        """Pairs with both ends in ``ids``; critical cells recomputed within ``ids``."""
        keep = frozenset(ids)
        pairs = frozenset(p for p in self.pairs if p[0] in keep and p[1] in keep)
        used = {c for p in pairs for c in p}
        return AcyclicMatching(pairs, frozenset(c for c in keep if c not in used and c in cx.cells))


@dataclass
class MatchingReport:
    valid: bool
    message: str = ""
    cycle: list = field(default_factory=list)
    critical_by_dim: dict = field(default_factory=dict)
    euler_identity: bool = True

    def __bool__(self):
        return self.valid


def verify_matching(cx: CellComplex, m: AcyclicMatching) -> MatchingReport:
    """Check the matching property, Hasse adjacency, acyclicity and the Euler identity."""
    seen: dict[str, tuple] = {}
    for a, b in sorted(m.pairs):
        for c in (a, b):
            if c not in cx.cells:
                raise PreconditionError(f"matched cell {c!r} is not in the complex")
        if a not in cx.cells[b].boundary:
            raise PreconditionError(f"pair ({a!r}, {b!r}) is not an arc of the Hasse diagram")
        for c in (a, b):
            if c in seen:
                return MatchingReport(False, f"cell {c!r} is matched twice: {seen[c]} and {(a, b)}")
            seen[c] = (a, b)
    expected = frozenset(c for c in cx.cells if c not in seen)
    if expected != m.critical:
        return MatchingReport(False, "critical set does not equal the set of unmatched cells")
    g = cx.hasse_digraph()
    for a, b in m.pairs:
        g.remove_edge(a, b)
        g.add_edge(b, a)
    by_dim = m.critical_by_dim(cx)
    chi = sum((-1) ** k * len(v) for k, v in by_dim.items())
    euler = chi == euler_characteristic(cx)
    try:
        cycle = nx.find_cycle(g)
    except nx.NetworkXNoCycle:
        return MatchingReport(True, "", [], by_dim, euler)
    return MatchingReport(False, "reversing the matched arcs creates a directed cycle", [a for a, _ in cycle], by_dim, euler)


# -- collapses ------------------------------------------------------------


class _Collapser:
    """Search for a sequence of elementary collapses inside a set of cells.

    ``free`` cells are those whose cofaces all lie in the set being
    collapsed (cofaces outside it are assumed already gone, as happens with
    a filtration).  ``mixed`` limits pairs whose lower cell is in ``boundary``
    but whose upper cell is not.
    """

    def __init__(self, cx: CellComplex, boundary: frozenset = frozenset(), max_states: int = 200_000, rank=None):
        self.rank = rank or {}
        self.cx = cx
        self.cob = cx.coboundary
        self.boundary = boundary
        self.max_states = max_states
        self.states = 0
        self.failed: set = set()

    def free_pairs(self, rest: frozenset):
        out = []
        for s in rest:
            up = [t for t in self.cob[s] if t in rest]
            if len(up) == 1 and not any(u in rest for u in self.cob[up[0]]):
                out.append((s, up[0]))
        out.sort(key=lambda p: (-self.rank.get(p[1], 0), -self.cx.cells[p[0]].dim, p[0], p[1]))
        return out

    def run(self, rest: frozenset, keep: int, mixed: int, mixed_dim: int | None, pair=None, alpha=None):
        """Collapse ``rest`` until ``keep`` cells remain (a vertex if ``keep == 1``).

        Returns ``(pairs, remaining, mixed_used)`` or ``None``.
        """
        key = (rest, mixed, pair is None)
        if key in self.failed:
            return None
        self.states += 1
        if self.states > self.max_states:
            raise BudgetExceededError("collapse search exceeded its state budget", explored=self.states)
        if len(rest) == keep:
            if keep == 1:
                (v,) = rest
                if self.cx.cells[v].dim != 0:
                    return None
                if alpha is not None and v != alpha:
                    return None
                if self.boundary and mixed_dim is not None and v not in self.boundary:
                    return None
            if pair is not None:
                return None
            return [], rest, 0
        if len(rest) < keep:
            return None
        cands = self.free_pairs(rest)
        if pair is not None and pair in cands:
            cands.remove(pair)
            cands.insert(0, pair)
        for s, t in cands:
            is_mixed = bool(self.boundary) and s in self.boundary and t not in self.boundary
            if is_mixed and (mixed == 0 or (mixed_dim is not None and self.cx.cells[s].dim != mixed_dim)):
                continue
            if alpha is not None and s == alpha:
                continue
            sub = self.run(
                rest - {s, t},
                keep,
                mixed - int(is_mixed),
                mixed_dim,
                None if (s, t) == pair else pair,
                alpha,
            )
            if sub is not None:
                pairs, remaining, used = sub
                return [(s, t)] + pairs, remaining, used + int(is_mixed)
        self.failed.add(key)
        return None


def matching_from_shelling(
    cx: CellComplex,
    order: Sequence[str],
    kind: str = "ball",
    *,
    restrict_boundary: bool = False,
    max_states: int = 200_000,
) -> AcyclicMatching:
    """Acyclic matching with one critical vertex (ball) or a vertex and a top cell (sphere).

    Each maximal cell contributes the cells of its closure that are new at
    its step of the shelling; those are collapsed onto what is already
    there.  Since no Hasse arc leads from a later step to an earlier one, the
    union of the pieces is acyclic.

    With ``restrict_boundary`` (balls only) at most one boundary cell, of
    codimension one, is matched to an interior cell and the critical vertex
    lies on the boundary, so the matching restricts to the boundary sphere
    with exactly two critical cells.
    """
    if kind not in ("ball", "sphere"):
        raise PreconditionError("kind must be 'ball' or 'sphere'")
    if restrict_boundary and kind != "ball":
        raise PreconditionError("the boundary restriction applies to balls")
    order = list(order)
    if sorted(order) != sorted(cx.maximal_cells()):
        raise PreconditionError("order is not a permutation of the maximal cells")
    d = cx.dim
    bd = boundary_subcomplex_ids(cx) if restrict_boundary else frozenset()
    pieces = []
    done: set = set()
    for cid in order:
        new = frozenset(cx.closure(cid)) - done
        done |= new
        pieces.append(new)
    col = _Collapser(cx, bd, max_states)

    def solve(i: int, mixed: int):
        if i == len(pieces):
            return [] if (not restrict_boundary or mixed == 0) else None
        piece = pieces[i]
        if i > 0 and kind == "sphere" and i == len(pieces) - 1 and piece == {order[-1]}:
            return solve(i + 1, mixed)  # the last cell of a sphere stays critical
        keep = 1 if i == 0 else 0
        mixed_dim = d - 1 if restrict_boundary else None
        col.failed.clear()
        found = col.run(piece, keep, mixed, mixed_dim)
        options = [found] if found is not None else []
        if found is not None and found[2] == 1:
            # also try saving the mixed pair for a later step
            col.failed.clear()
            alt = col.run(piece, keep, 0, mixed_dim)
            if alt is not None:
                options.append(alt)
        for prs, _, used in options:
            rest = solve(i + 1, mixed - used)
            if rest is not None:
                return prs + rest
        return None

    out = solve(0, 1 if restrict_boundary else 0)
    if out is None and restrict_boundary:
        # Step-local pieces may each need a boundary/interior pair; search the
        # whole ball instead, collapsing late cells of the shelling first.
        rank = {c: i for i, p in enumerate(pieces) for c in p}
        m = constrained_collapse(cx, restrict_boundary=True, max_states=max_states, rank=rank)
        out = None if m is None else sorted(m.pairs)
    if out is None:
        raise ConstructionError("no acyclic matching with the required critical cells along this shelling")
    m = AcyclicMatching.from_pairs(cx, out)
    want = 1 if kind == "ball" else 2
    if len(m.critical) != want:
        raise ConstructionError(f"matching has {len(m.critical)} critical cells, expected {want}")
    return m


def constrained_collapse(
    cx: CellComplex,
    *,
    alpha: str | None = None,
    pair: tuple | None = None,
    restrict_boundary: bool = False,
    max_states: int = 1_000_000,
    rank: dict | None = None,
) -> AcyclicMatching | None:
    """A collapse of ``cx`` to the vertex ``alpha`` that uses the matched ``pair``.

    With ``restrict_boundary`` the matching also restricts to the boundary
    sphere with two critical cells, as in :func:`matching_from_shelling`.
    """
    bd = boundary_subcomplex_ids(cx) if restrict_boundary else frozenset()
    col = _Collapser(cx, bd, max_states, rank)
    found = col.run(
        frozenset(cx.cells), 1, 1 if restrict_boundary else 0, cx.dim - 1 if restrict_boundary else None,
        tuple(pair) if pair else None, alpha,
    )
    if found is None or (restrict_boundary and found[2] != 1):
        return None
    return AcyclicMatching.from_pairs(cx, found[0])


def brute_force_collapse(cx: CellComplex, max_cells: int = 25, max_states: int = 1_000_000) -> AcyclicMatching | None:
    """Exhaustive search for a collapse of ``cx`` to a single vertex; ``None`` if there is none."""
    if len(cx) > max_cells:
        raise BudgetExceededError(f"{len(cx)} cells exceed the limit of {max_cells}")
    if not len(cx):
        raise PreconditionError("empty complex")
    col = _Collapser(cx, frozenset(), max_states)
    found = col.run(frozenset(cx.cells), 1, 0, None)
    return None if found is None else AcyclicMatching.from_pairs(cx, found[0])


# -- sphere extension and duality -------------------------------------------


def sphere_extension(sigma: CellComplex) -> CellComplex:
    """``Sigma_+``: glue one more top cell along the boundary of the subdivision."""
    d = sigma.dim
    if DELTA in sigma.cells:
        raise PreconditionError(f"cell id {DELTA!r} is reserved")
    free = [c.id for c in sigma.cells_of_dim(d - 1) if len(sigma.coboundary[c.id]) == 1]
    if not free:
        raise PreconditionError("complex has no boundary")
    out = CellComplex(list(sigma) + [Cell(DELTA, d, boundary=frozenset(free))], sigma.vertex_coords, sigma.ray_dirs)
    bad = out.cell_sphere_check()
    if bad or euler_characteristic(out) != 1 + (-1) ** d:
        raise PreconditionError("boundary of the subdivision is not a sphere")
    return out


def dual_complex(cx: CellComplex) -> CellComplex:
    """Order-reversed poset of a closed pseudomanifold; cells keep their ids."""
    d = cx.dim
    cob = cx.coboundary
    cells = [Cell(c.id, d - c.dim, boundary=frozenset(cob[c.id])) for c in cx]
    return CellComplex(cells)


def dualize_matching(m: AcyclicMatching) -> AcyclicMatching:
    """The same pairs read in the dual poset."""
    return AcyclicMatching(frozenset((b, a) for a, b in m.pairs), m.critical)


# -- tight spans ----------------------------------------------------------


@dataclass
class CollapsibilityCertificate:
    matching: AcyclicMatching
    critical_vertex: str
    provenance: dict = field(default_factory=dict)


def tight_span_collapsibility(cfg, first: str | None = None) -> CollapsibilityCertificate:
    """Collapse of the tight span, following the shelling-duality argument.

    Falls back to :func:`brute_force_collapse` if the construction fails;
    ``provenance["method"]`` records which one produced the certificate.
    """
    from .shelling import subdivision_shelling
    from .subdivision import interior_cells, regular_subdivision, tight_span

    sigma = regular_subdivision(cfg)
    ts = tight_span(cfg)
    if len(ts) == 1:
        (v,) = ts.cells
        return CollapsibilityCertificate(AcyclicMatching(frozenset(), frozenset([v])), v, {"method": "trivial"})
    order = subdivision_shelling(cfg, first)
    prov = {"shelling": list(order.order)}
    try:
        mu = matching_from_shelling(sigma, order.order, "ball", restrict_boundary=True)
        plus = sphere_extension(sigma)
        mu_plus = AcyclicMatching.from_pairs(plus, mu.pairs)
        dual = dual_complex(plus)
        mu_star = dualize_matching(mu_plus)
        inner = interior_cells(sigma)
        restricted = mu_star.restrict(dual, inner)
        m = AcyclicMatching.from_pairs(ts, restricted.pairs)
        report = verify_matching(ts, m)
        if not report.valid or len(m.critical) != 1:
            raise ConstructionError(f"dual matching on the tight span is not a collapse: {report.message}")
        (crit,) = m.critical
        alpha = next(c for c in mu.critical)
        beta_gamma = [p for p in mu.pairs if p[0] in boundary_subcomplex_ids(sigma) and p[1] not in boundary_subcomplex_ids(sigma)]
        prov.update(
            method="shelling",
            ball_matching=sorted(mu.pairs),
            alpha=alpha,
            beta=beta_gamma[0][0] if beta_gamma else None,
            gamma=beta_gamma[0][1] if beta_gamma else None,
        )
        return CollapsibilityCertificate(m, crit, prov)
    except (ConstructionError, BudgetExceededError) as exc:
        prov["construction_error"] = str(exc)
    m = brute_force_collapse(ts, max_cells=max(25, len(ts)))
    if m is None:
        raise ConstructionError("tight span admits no collapse")
    (crit,) = m.critical
    prov["method"] = "brute"
    return CollapsibilityCertificate(m, crit, prov)


__all__ = [
    "DELTA",
    "AcyclicMatching",
    "CollapsibilityCertificate",
    "MatchingReport",
    "brute_force_collapse",
    "constrained_collapse",
    "dual_complex",
    "dualize_matching",
    "matching_from_shelling",
    "sphere_extension",
    "tight_span_collapsibility",
    "verify_matching",
]
