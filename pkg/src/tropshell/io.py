"""JSON reading and writing.

Every artifact carries a ``"schema"`` tag such as ``"tropshell.complex/1"``.
Rationals are written as ``"p/q"`` strings (integers as plain strings) and
read from strings or JSON integers.  Shellings and matchings point at their
complex through ``complex_ref``: either a path to a complex file, or
``"input.json#kind"`` naming a complex derived from an input file.  Paths are
relative to the file that contains the reference.
"""

from __future__ import annotations

import json
import os
from fractions import Fraction
from typing import Any

from .complex import Cell, CellComplex, compactify
from .errors import PreconditionError
from .kernel import Polyhedron
from .kernel.linalg import to_fraction
from .morse import AcyclicMatching
from .shelling import ShellingOrder
from .subdivision import PointConfiguration
from .tropical import NEG_INF, TropicalMatrix, TropicalPolynomial

SCHEMAS = {
    "configuration": "tropshell.configuration/1",
    "polynomial": "tropshell.polynomial/1",
    "matrix": "tropshell.matrix/1",
    "polyhedron": "tropshell.polyhedron/1",
    "complex": "tropshell.complex/1",
    "shelling": "tropshell.shelling/1",
    "matching": "tropshell.matching/1",
}
_KIND_OF = {v: k for k, v in SCHEMAS.items()}


class ParseError(PreconditionError):
    """Malformed input file."""


def rat(x: Fraction) -> str:
    return str(Fraction(x))


def parse_rat(x) -> Fraction:
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        raise ParseError(f"expected a rational as an integer or 'p/q' string, got {x!r}")
    try:
        return to_fraction(x)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad rational {x!r}") from exc


def _vec(xs) -> list[str]:
    return [rat(x) for x in xs]


def _pvec(xs) -> tuple:
    if not isinstance(xs, list):
        raise ParseError(f"expected a list of rationals, got {xs!r}")
    return tuple(parse_rat(x) for x in xs)


# -- writers --------------------------------------------------------------


def configuration_to_json(cfg: PointConfiguration) -> dict:
    return {
        "schema": SCHEMAS["configuration"],
        "points": [_vec(p) for p in cfg.points],
        "heights": _vec(cfg.heights),
        "labels": list(cfg.labels),
    }


def polynomial_to_json(f: TropicalPolynomial) -> dict:
    return {
        "schema": SCHEMAS["polynomial"],
        "convention": "min",
        "terms": [{"exponent": list(u), "coeff": rat(c), "label": lab} for u, c, lab in zip(f.support, f.coeffs, f.labels)],
    }


def matrix_to_json(v: TropicalMatrix) -> dict:
    return {
        "schema": SCHEMAS["matrix"],
        "convention": "min",
        "matrix": [["-inf" if x is NEG_INF else rat(x) for x in row] for row in v.rows],
    }


def polyhedron_to_json(p: Polyhedron, labels=None) -> dict:
    out = {"schema": SCHEMAS["polyhedron"], "points": [_vec(x) for x in p.points], "rays": [_vec(r) for r in p.rays]}
    if labels is not None:
        out["labels"] = list(labels)
    return out


def complex_to_json(cx: CellComplex) -> dict:
    cells = []
    for c in sorted(cx, key=lambda c: (c.dim, c.id)):
        cells.append(
            {
                "id": c.id,
                "dim": c.dim,
                "vertices": sorted(c.vertices),
                "rays": sorted(c.rays),
                "boundary": sorted(c.boundary),
                "is_star": c.is_star,
            }
        )
    return {
        "schema": SCHEMAS["complex"],
        "cells": cells,
        "vertex_coords": {k: _vec(v) for k, v in sorted(cx.vertex_coords.items())},
        "ray_dirs": {k: _vec(v) for k, v in sorted(cx.ray_dirs.items())},
        "compactified": cx.compactified,
    }


def shelling_to_json(order: ShellingOrder, verified: bool | None = None, violation: dict | None = None) -> dict:
    out: dict[str, Any] = {
        "schema": SCHEMAS["shelling"],
        "order": list(order.order),
        "construction": order.construction,
        "complex_ref": order.complex_ref,
    }
    if verified is not None:
        out["verified"] = verified
    if violation is not None:
        out["violation"] = violation
    return out


def matching_to_json(m: AcyclicMatching, verified: bool | None = None, complex_ref: str = "") -> dict:
    out: dict[str, Any] = {
        "schema": SCHEMAS["matching"],
        "pairs": [list(p) for p in sorted(m.pairs)],
        "critical": sorted(m.critical),
        "complex_ref": complex_ref,
    }
    if verified is not None:
        out["verified"] = verified
    return out


def dumps(obj: dict) -> str:
    return json.dumps(obj, indent=2) + "\n"


# -- readers --------------------------------------------------------------


def kind_of(data: dict) -> str:
    if not isinstance(data, dict):
        raise ParseError("top-level JSON value must be an object")
    if "schema" in data:
        if data["schema"] not in _KIND_OF:
            raise ParseError(f"unknown schema {data['schema']!r}")
        return _KIND_OF[data["schema"]]
    for key, kind in (("cells", "complex"), ("order", "shelling"), ("pairs", "matching"), ("matrix", "matrix"), ("terms", "polynomial")):
        if key in data:
            return kind
    if "points" in data:
        return "configuration" if "heights" in data else "polyhedron"
    raise ParseError("cannot tell what kind of artifact this is")


def configuration_from_json(data: dict) -> PointConfiguration:
    try:
        return PointConfiguration([_pvec(p) for p in data["points"]], _pvec(data["heights"]), data.get("labels"))
    except KeyError as exc:
        raise ParseError(f"configuration lacks {exc}") from exc


def polynomial_from_json(data: dict) -> TropicalPolynomial:
    if data.get("convention", "min") != "min":
        raise ParseError("only the min convention is supported; negate coefficients to convert")
    terms = data.get("terms")
    if not isinstance(terms, list):
        raise ParseError("polynomial lacks a list of terms")
    items, labels = [], []
    for t in terms:
        if isinstance(t, dict):
            u, c = t.get("exponent"), t.get("coeff")
            labels.append(t.get("label"))
        elif isinstance(t, list) and len(t) == 2:
            u, c = t
            labels.append(None)
        else:
            raise ParseError(f"bad term {t!r}")
        if not isinstance(u, list) or not all(isinstance(e, int) and not isinstance(e, bool) for e in u):
            raise ParseError(f"exponent must be a list of integers, got {u!r}")
        items.append((tuple(u), parse_rat(c)))
    labs = labels if all(lab is not None for lab in labels) else None
    return TropicalPolynomial(items, labs)


def matrix_from_json(data: dict) -> TropicalMatrix:
    if data.get("convention", "min") != "min":
        raise ParseError("only the min convention is supported")
    rows = data.get("matrix")
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise ParseError("matrix must be a list of rows")
    return TropicalMatrix([[x if x == "-inf" else parse_rat(x) for x in r] for r in rows])


def polyhedron_from_json(data: dict) -> tuple[Polyhedron, list | None]:
    pts = [_pvec(p) for p in data.get("points", [])]
    rays = [_pvec(r) for r in data.get("rays", [])]
    if not pts:
        raise ParseError("polyhedron needs at least one point")
    return Polyhedron(pts, rays), data.get("labels")


def complex_from_json(data: dict) -> CellComplex:
    try:
        cells = [
            Cell(
                str(c["id"]),
                int(c["dim"]),
                frozenset(c.get("vertices", [])),
                frozenset(c.get("rays", [])),
                frozenset(c.get("boundary", [])),
                bool(c.get("is_star", False)),
            )
            for c in data["cells"]
        ]
    except (KeyError, TypeError) as exc:
        raise ParseError(f"bad cell entry: {exc}") from exc
    return CellComplex(
        cells,
        {k: _pvec(v) for k, v in data.get("vertex_coords", {}).items()},
        {k: _pvec(v) for k, v in data.get("ray_dirs", {}).items()},
        bool(data.get("compactified", False)),
    )


def shelling_from_json(data: dict) -> ShellingOrder:
    order = data.get("order")
    if not isinstance(order, list):
        raise ParseError("shelling needs an order list")
    return ShellingOrder([str(x) for x in order], data.get("complex_ref", ""), data.get("construction", "manual"))


def matching_from_json(data: dict, cx: CellComplex | None = None) -> AcyclicMatching:
    pairs = data.get("pairs")
    if not isinstance(pairs, list) or not all(isinstance(p, list) and len(p) == 2 for p in pairs):
        raise ParseError("matching needs a list of [low, high] pairs")
    pairs = [(str(a), str(b)) for a, b in pairs]
    if cx is not None:
        return AcyclicMatching.from_pairs(cx, pairs)
    return AcyclicMatching(frozenset(pairs), frozenset(str(c) for c in data.get("critical", [])))


READERS = {
    "configuration": configuration_from_json,
    "polynomial": polynomial_from_json,
    "matrix": matrix_from_json,
    "polyhedron": polyhedron_from_json,
    "complex": complex_from_json,
    "shelling": shelling_from_json,
    "matching": matching_from_json,
}


def read_json(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: {exc}") from exc
    except OSError as exc:
        raise ParseError(f"{path}: {exc.strerror}") from exc


def load(path: str):
    """``(kind, object)`` for any artifact file."""
    data = read_json(path)
    kind = kind_of(data)
    return kind, READERS[kind](data)


# -- derived complexes ----------------------------------------------------


def configuration_of(kind: str, obj):
    """The point configuration behind a configuration, polynomial or matrix."""
    from .tropical import arrangement_polynomial, homogeneous_quotient

    if kind == "configuration":
        return obj
    if kind == "polynomial":
        g = homogeneous_quotient(obj) if obj.homogeneous_degree is not None and obj.dim >= 2 else obj
        return g.configuration()
    if kind == "matrix":
        return homogeneous_quotient(arrangement_polynomial(obj)).configuration()
    raise PreconditionError(f"a {kind} has no point configuration")


def derived_complex(kind: str, obj, which: str) -> CellComplex:
    """Complexes that a given input determines, by name."""
    from . import morse, subdivision, tropical
    from .complex import boundary_complex

    if kind == "complex":
        if which in ("", "complex"):
            return obj
        if which == "compactified":
            return compactify(obj)
        raise PreconditionError(f"unknown derived complex {which!r} for a complex")
    if kind == "polyhedron":
        poly, labels = obj
        cx = boundary_complex(poly, labels)
        if which == "boundary":
            return cx
        if which == "boundary-compactified":
            return cx if poly.bounded else compactify(cx)
        raise PreconditionError(f"unknown derived complex {which!r} for a polyhedron")
    if kind == "matrix":
        table = {
            "covdec": lambda: tropical.covector_decomposition(obj),
            "covdec-compactified": lambda: compactify(tropical.covector_decomposition(obj)),
            "tropical-polytope": lambda: tropical.tropical_polytope(obj),
            "projective-closure": lambda: tropical.projective_covector_complex(obj),
            "schlegel": lambda: tropical.schlegel_diagram(obj),
        }
        if which in table:
            return table[which]()
    if kind == "polynomial" and which == "hypersurface":
        return tropical.hypersurface(obj)
    cfg = configuration_of(kind, obj)
    table = {
        "subdivision": lambda: subdivision.regular_subdivision(cfg),
        "subdivision-plus": lambda: morse.sphere_extension(subdivision.regular_subdivision(cfg)),
        "normal-complex": lambda: subdivision.normal_complex(cfg),
        "normal-complex-compactified": lambda: _compactified_normal(cfg),
        "tight-span": lambda: subdivision.tight_span(cfg),
    }
    if which not in table:
        raise PreconditionError(f"unknown derived complex {which!r} for a {kind}")
    return table[which]()


def _compactified_normal(cfg):
    from .subdivision import normal_complex

    nc = normal_complex(cfg)
    return compactify(nc) if any(not c.bounded for c in nc) else nc


def resolve_complex(ref: str, base_dir: str) -> CellComplex:
    """Load the complex named by ``"path"`` or ``"path#kind"`` relative to ``base_dir``."""
    if not ref:
        raise PreconditionError("no complex reference given")
    path, _, which = ref.partition("#")
    if not path:
        raise PreconditionError(f"complex reference {ref!r} has no file part")
    full = path if os.path.isabs(path) else os.path.join(base_dir, path)
    kind, obj = load(full)
    return derived_complex(kind, obj, which)


__all__ = [
    "SCHEMAS",
    "ParseError",
    "complex_from_json",
    "complex_to_json",
    "configuration_from_json",
    "configuration_of",
    "configuration_to_json",
    "derived_complex",
    "dumps",
    "kind_of",
    "load",
    "matching_from_json",
    "matching_to_json",
    "matrix_from_json",
    "matrix_to_json",
    "parse_rat",
    "polyhedron_from_json",
    "polyhedron_to_json",
    "polynomial_from_json",
    "polynomial_to_json",
    "rat",
    "read_json",
    "resolve_complex",
    "shelling_from_json",
    "shelling_to_json",
]
