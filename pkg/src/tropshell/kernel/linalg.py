"""Exact linear algebra over the rationals.

Everything here works on plain Python sequences of :class:`fractions.Fraction`
(or ints, which are promoted).  Matrices are lists of rows.  Nothing is ever
rounded.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from ..errors import DimensionMismatchError, PreconditionError

Vector = tuple  # tuple[Fraction, ...]


def to_fraction(value) -> Fraction:
    """Parse an int, Fraction or ``"p/q"`` / decimal string into a Fraction.

    Floats are rejected: a float has already been rounded.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise PreconditionError(f"not a rational number: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if text.lower() in ("-inf", "inf", "+inf", "nan"):
            raise PreconditionError(f"infinite value {value!r} not allowed here")
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise PreconditionError(f"cannot parse rational {value!r}") from exc
    raise PreconditionError(f"not a rational number: {value!r} ({type(value).__name__})")


def vec(values: Iterable) -> Vector:
    return tuple(to_fraction(v) for v in values)


def format_rational(q: Fraction) -> str:
    return str(q)


def dot(a: Sequence, b: Sequence) -> Fraction:
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def sub(a: Sequence, b: Sequence) -> Vector:
    return tuple(x - y for x, y in zip(a, b))


def add(a: Sequence, b: Sequence) -> Vector:
    return tuple(x + y for x, y in zip(a, b))


def scale(c, a: Sequence) -> Vector:
    return tuple(c * x for x in a)


def centroid(points: Sequence[Sequence]) -> Vector:
    if not points:
        raise PreconditionError("centroid of an empty point set")
    n = len(points)
    return tuple(sum(col, Fraction(0)) / n for col in zip(*points))


def _check_rect(rows: Sequence[Sequence]) -> int:
    if not rows:
        return 0
    width = len(rows[0])
    for r in rows:
        if len(r) != width:
            raise DimensionMismatchError("ragged matrix")
    return width


def rref(rows: Sequence[Sequence], ncols: int | None = None):
    """Reduced row echelon form.  Returns ``(matrix, pivot_columns)``."""
    width = _check_rect(rows) if ncols is None else ncols
    m = [[Fraction(x) for x in r] for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(width):
        if r == len(m):
            break
        piv = None
        for i in range(r, len(m)):
            if m[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        pr = m[r]
        inv = 1 / pr[c]
        if inv != 1:
            pr = m[r] = [x * inv for x in pr]
        for i in range(len(m)):
            if i != r:
                f = m[i][c]
                if f != 0:
                    row = m[i]
                    m[i] = [x - f * y for x, y in zip(row, pr)]
        pivots.append(c)
        r += 1
    return m, pivots


def rank(rows: Sequence[Sequence]) -> int:
    if not rows:
        return 0
    return len(rref(rows)[1])


def nullspace(rows: Sequence[Sequence], ncols: int | None = None) -> list[Vector]:
    """Basis of ``{x : rows @ x = 0}``; one vector per free column."""
    width = _check_rect(rows) if ncols is None else ncols
    if not rows:
        return [tuple(Fraction(int(i == j)) for i in range(width)) for j in range(width)]
    m, pivots = rref(rows, width)
    free = [c for c in range(width) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * width
        x[f] = Fraction(1)
        for i, p in enumerate(pivots):
            x[p] = -m[i][f]
        basis.append(tuple(x))
    return basis


def solve(a: Sequence[Sequence], b: Sequence) -> Vector | None:
    """Unique solution of the square-or-tall system ``a x = b``, else ``None``."""
    width = _check_rect(a)
    aug = [list(r) + [bi] for r, bi in zip(a, b)]
    m, pivots = rref(aug, width + 1)
    if width in pivots or len(pivots) < width:
        return None
    x = [Fraction(0)] * width
    for i, p in enumerate(pivots):
        x[p] = m[i][width]
    return tuple(x)


def det(matrix: Sequence[Sequence]) -> Fraction:
    """Determinant by fraction-exact Gaussian elimination."""
    n = len(matrix)
    if any(len(r) != n for r in matrix):
        raise DimensionMismatchError("determinant of a non-square matrix")
    m = [[Fraction(x) for x in r] for r in matrix]
    sign = 1
    result = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            sign = -sign
        pc = m[c][c]
        result *= pc
        for i in range(c + 1, n):
            f = m[i][c] / pc
            if f:
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return sign * result


def primitive(v: Sequence) -> Vector:
    """Scale a nonzero rational vector to the primitive integer vector on its ray."""
    fr = [Fraction(x) for x in v]
    den = 1
    for x in fr:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in fr]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    if g == 0:
        raise PreconditionError("primitive() of the zero vector")
    return tuple(Fraction(x // g) for x in ints)


def affine_rank_of(points: Sequence[Sequence], directions: Sequence[Sequence] = ()) -> int:
    """Dimension of ``aff(points) + cone(directions)``; points must be nonempty."""
    p0 = points[0]
    rows = [sub(p, p0) for p in points[1:]] + [tuple(d) for d in directions]
    return rank(rows) if rows else 0
