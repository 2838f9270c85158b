"""Exact rational scalars, cone vectors and the nonnegative-orthant cone.

Scalars are :class:`fractions.Fraction` throughout.  Vectors live in Q^n and
are ordered by the orthant cone: ``u <= v`` iff ``v - u`` has no negative
coordinate.  The orthant order is a lattice, so suprema and infima of finite
sets are the coordinatewise max and min.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Iterator, Sequence

__all__ = [
    "RationalSyntaxError",
    "rat_parse",
    "as_rational",
    "fmt_rat",
    "ConeVector",
    "OrthantCone",
    "MAX_NORM_CONE_CONSTANT",
    "cone_contains",
    "cone_leq",
    "cone_lt_interior",
    "lattice_sup",
    "lattice_inf",
    "max_norm",
]

_RAT_RE = re.compile(r"-?\d+(?:/\d+)?")


class RationalSyntaxError(ValueError):
    """Raised for a malformed exact-fraction literal."""


def rat_parse(text: str) -> Fraction:
    """Parse ``[-]digits`` or ``[-]digits/digits`` into a reduced fraction."""
    s = text.strip()
    if not _RAT_RE.fullmatch(s):
        raise RationalSyntaxError(f"malformed rational literal {text!r}")
    num, _, den = s.partition("/")
    if den and int(den) == 0:
        raise RationalSyntaxError(f"zero denominator in {text!r}")
    return Fraction(int(num), int(den) if den else 1)


def as_rational(value) -> Fraction:
    """Coerce an int, Fraction or literal string to Fraction; floats are refused."""
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        return rat_parse(value)
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


def fmt_rat(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class ConeVector:
    """A point of Q^n.  Supports ``+``, ``-``, negation and scalar ``q * v``."""

    coords: tuple[Fraction, ...]

    def __init__(self, coords: Iterable):
        object.__setattr__(self, "coords", tuple(as_rational(c) for c in coords))

    @classmethod
    def zero(cls, dimension: int) -> "ConeVector":
        return cls((0,) * dimension)

    @property
    def dimension(self) -> int:
        return len(self.coords)

    def __len__(self) -> int:
        return len(self.coords)

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.coords)

    def __getitem__(self, i: int) -> Fraction:
        return self.coords[i]

    def _same_dim(self, other: "ConeVector") -> None:
        if len(self.coords) != len(other.coords):
            raise ValueError(
                f"dimension mismatch: {len(self.coords)} vs {len(other.coords)}"
            )

    def __add__(self, other: "ConeVector") -> "ConeVector":
        if not isinstance(other, ConeVector):
            return NotImplemented
        self._same_dim(other)
        return _raw(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "ConeVector") -> "ConeVector":
        if not isinstance(other, ConeVector):
            return NotImplemented
        self._same_dim(other)
        return _raw(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "ConeVector":
        return _raw(tuple(-a for a in self.coords))

    def __rmul__(self, scalar) -> "ConeVector":
        if isinstance(scalar, float):
            return NotImplemented
        q = as_rational(scalar)
        return _raw(tuple(q * a for a in self.coords))

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __str__(self) -> str:
        return "(" + ", ".join(fmt_rat(c) for c in self.coords) + ")"

    def __repr__(self) -> str:
        return f"ConeVector{self}"


def _raw(coords: tuple[Fraction, ...]) -> ConeVector:
    # skips coercion for coordinates that are already Fractions
    v = object.__new__(ConeVector)
    object.__setattr__(v, "coords", coords)
    return v


MAX_NORM_CONE_CONSTANT = Fraction(1)


@dataclass(frozen=True)
class OrthantCone:
    """The nonnegative orthant of Q^n, normed by the max-norm.

    ``normal_constant`` is 1: ``0 <= x <= y`` coordinatewise gives
    ``max|x_i| <= max|y_i|``.
    """

    dimension: int
    norm_kind: str = "max-norm"
    normal_constant: Fraction = MAX_NORM_CONE_CONSTANT

    def __post_init__(self):
        if self.dimension < 1:
            raise ValueError("cone dimension must be positive")
        if self.norm_kind != "max-norm":
            raise ValueError(f"unsupported norm {self.norm_kind!r}")

    def norm(self, v: ConeVector) -> Fraction:
        return max_norm(v)

    def contains(self, v: ConeVector) -> bool:
        return cone_contains(v)

    def leq(self, u: ConeVector, v: ConeVector) -> bool:
        return cone_leq(u, v)


def cone_contains(v: ConeVector) -> bool:
    return all(c >= 0 for c in v.coords)


def cone_leq(u: ConeVector, v: ConeVector) -> bool:
    """``u <= v`` in the orthant order."""
    u._same_dim(v)
    return all(a <= b for a, b in zip(u.coords, v.coords))


def cone_lt_interior(u: ConeVector, v: ConeVector) -> bool:
    """``u << v``: ``v - u`` lies in the interior of the orthant."""
    u._same_dim(v)
    return all(a < b for a, b in zip(u.coords, v.coords))


def _check_family(vs: Sequence[ConeVector]) -> None:
    if not vs:
        raise ValueError("lattice bound of an empty family")
    n = len(vs[0])
    if any(len(v) != n for v in vs):
        raise ValueError("dimension mismatch in lattice bound")


def lattice_sup(vs: Iterable[ConeVector]) -> ConeVector:
    vs = list(vs)
    _check_family(vs)
    return _raw(tuple(max(col) for col in zip(*(v.coords for v in vs))))


def lattice_inf(vs: Iterable[ConeVector]) -> ConeVector:
    vs = list(vs)
    _check_family(vs)
    return _raw(tuple(min(col) for col in zip(*(v.coords for v in vs))))


def max_norm(v: ConeVector) -> Fraction:
    return max((abs(c) for c in v.coords), default=Fraction(0))
