"""Symbolic infinitesimal perturbations.

An :class:`EpsVector` is a polynomial ``c0 + c1*eps + c2*eps**2 + ...`` with
rational coefficients, ordered by its value as ``eps -> 0+``: compare the
coefficient vectors lexicographically.  :class:`EpsRatio` is a quotient of two
such polynomials, which is what solving a line/hyperplane intersection for the
line parameter produces.
"""

from __future__ import annotations

from fractions import Fraction
from functools import total_ordering
from typing import Iterable

from .linalg import to_fraction


def _trim(coeffs) -> tuple:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


@total_ordering
class EpsVector:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        self.coeffs = _trim(to_fraction(c) if not isinstance(c, Fraction) else c for c in coeffs)

    @classmethod
    def constant(cls, c) -> "EpsVector":
        return cls([c])

    @classmethod
    def monomial(cls, power: int, c=1) -> "EpsVector":
        return cls([0] * power + [c])

    @classmethod
    def lift(cls, value) -> "EpsVector":
        return value if isinstance(value, EpsVector) else cls.constant(value)

    def coefficient(self, power: int) -> Fraction:
        return self.coeffs[power] if power < len(self.coeffs) else Fraction(0)

    def sign(self) -> int:
        for c in self.coeffs:
            if c:
                return 1 if c > 0 else -1
        return 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def evaluate(self, eps) -> Fraction:
        eps = Fraction(eps)
        total = Fraction(0)
        for c in reversed(self.coeffs):
            total = total * eps + c
        return total

    def __add__(self, other):
        other = EpsVector.lift(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return EpsVector(self.coefficient(i) + other.coefficient(i) for i in range(n))

    __radd__ = __add__

    def __neg__(self):
        return EpsVector(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-EpsVector.lift(other))

    def __rsub__(self, other):
        return EpsVector.lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, EpsVector):
            c = to_fraction(other) if not isinstance(other, Fraction) else other
            return EpsVector(c * x for x in self.coeffs)
        if not self.coeffs or not other.coeffs:
            return EpsVector()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return EpsVector(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = EpsVector.constant(other)
        if not isinstance(other, EpsVector):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __lt__(self, other):
        return (self - EpsVector.lift(other)).sign() < 0

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        if not self.coeffs:
            return "EpsVector(0)"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" if i == 0 else f"{c}*eps^{i}")
        return "EpsVector(" + " + ".join(terms) + ")"


@total_ordering
class EpsRatio:
    """``num / den`` for EpsVectors with ``den`` not identically zero."""

    __slots__ = ("num", "den")

    def __init__(self, num, den):
        num, den = EpsVector.lift(num), EpsVector.lift(den)
        if den.is_zero():
            raise ZeroDivisionError("EpsRatio with zero denominator")
        if den.sign() < 0:
            num, den = -num, -den
        self.num, self.den = num, den

    def sign(self) -> int:
        return self.num.sign()

    def _cmp(self, other) -> int:
        other = other if isinstance(other, EpsRatio) else EpsRatio(other, 1)
        # both denominators are positive near eps = 0+
        return (self.num * other.den - other.num * self.den).sign()

    def __eq__(self, other):
        if not isinstance(other, (EpsRatio, EpsVector, int, Fraction)):
            return NotImplemented
        return self._cmp(other) == 0

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __hash__(self):
        raise TypeError("EpsRatio is not hashable")

    def evaluate(self, eps) -> Fraction:
        return self.num.evaluate(eps) / self.den.evaluate(eps)

    def __repr__(self):
        return f"EpsRatio({self.num!r} / {self.den!r})"


def moment_direction(dim: int, start_power: int = 1) -> list[EpsVector]:
    """The moment-curve vector ``(eps^k, eps^(k+1), ...)`` of length ``dim``."""
    return [EpsVector.monomial(start_power + i) for i in range(dim)]
