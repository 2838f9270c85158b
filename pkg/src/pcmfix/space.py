"""Finite partial cone metric spaces.

A space is an ordered tuple of point labels together with a symmetric table
``p(x, y)`` of cone vectors, diagonal included.  Labels are strings; integer
labels passed by callers are converted with ``str``.
"""

from __future__ import annotations

import itertools
import random
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from pcmfix.numerics import (
    ConeVector,
    OrthantCone,
    as_rational,
    cone_contains,
    cone_leq,
    lattice_inf,
    lattice_sup,
)

__all__ = [
    "MetricRecipe",
    "FinitePcmSpace",
    "InducedConeMetric",
    "Violation",
    "AxiomReport",
    "AxiomWarning",
    "build_space",
    "check_pcm_axioms",
    "induce_cone_metric",
    "check_cm_axioms",
    "point_in_closure",
    "is_closed",
    "is_bounded",
    "is_cbp_member",
    "generate_random_space",
    "random_lift_recipe",
]

RECIPE_KINDS = ("table", "absdiff-scaledmax", "max-alpha", "weighted-lift")


def label(x) -> str:
    if isinstance(x, bool):
        raise TypeError("booleans are not point labels")
    return x if isinstance(x, str) else str(x)


def _pair_table(entries: Mapping, what: str) -> dict[tuple[str, str], ConeVector]:
    """Normalise a pair-keyed table and apply the symmetric closure."""
    table: dict[tuple[str, str], ConeVector] = {}
    for (x, y), v in entries.items():
        x, y = label(x), label(y)
        v = v if isinstance(v, ConeVector) else ConeVector(v)
        for key in ((x, y), (y, x)):
            old = table.get(key)
            if old is not None and old != v:
                raise ValueError(f"conflicting {what} entries for ({x}, {y}): {old} vs {v}")
            table[key] = v
    return table


@dataclass(frozen=True)
class MetricRecipe:
    """How the table of a space is produced.

    ``table``: explicit entries.  ``absdiff-scaledmax(a, b)``:
    ``p(x,y) = (a|x-y|, b max{x,y})``.  ``max-alpha(alpha)``:
    ``p(x,y) = (max{x,y}, alpha max{x,y})``.  ``weighted-lift``:
    ``p(x,y) = d(x,y) + sup{w(x), w(y)}`` for a cone metric table ``d`` and
    weights ``w``.
    """

    kind: str
    params: tuple[Fraction, ...] = ()
    table: Mapping[tuple[str, str], ConeVector] | None = None
    d_table: Mapping[tuple[str, str], ConeVector] | None = None
    weights: Mapping[str, ConeVector] | None = None

    def __post_init__(self):
        if self.kind not in RECIPE_KINDS:
            raise ValueError(f"unknown metric recipe {self.kind!r}")
        object.__setattr__(self, "params", tuple(as_rational(q) for q in self.params))
        if self.kind == "absdiff-scaledmax":
            if len(self.params) != 2 or min(self.params) < 0:
                raise ValueError("absdiff-scaledmax needs two nonnegative parameters a, b")
        if self.kind == "max-alpha":
            if len(self.params) != 1 or self.params[0] < 0:
                raise ValueError("max-alpha needs one nonnegative parameter alpha")
        if self.kind == "table":
            if self.table is None:
                raise ValueError("table recipe needs entries")
            object.__setattr__(self, "table", _pair_table(self.table, "table"))
        if self.kind == "weighted-lift":
            if self.d_table is None or self.weights is None:
                raise ValueError("weighted-lift needs a d-table and weights")
            object.__setattr__(self, "d_table", _pair_table(self.d_table, "d-table"))
            object.__setattr__(
                self,
                "weights",
                {
                    label(x): v if isinstance(v, ConeVector) else ConeVector(v)
                    for x, v in self.weights.items()
                },
            )

    @classmethod
    def from_table(cls, entries: Mapping) -> "MetricRecipe":
        return cls("table", table=entries)

    @classmethod
    def absdiff_scaledmax(cls, a, b) -> "MetricRecipe":
        return cls("absdiff-scaledmax", (a, b))

    @classmethod
    def max_alpha(cls, alpha) -> "MetricRecipe":
        return cls("max-alpha", (alpha,))

    @classmethod
    def weighted_lift(cls, d_table: Mapping, weights: Mapping) -> "MetricRecipe":
        return cls("weighted-lift", d_table=d_table, weights=weights)


@dataclass(frozen=True, eq=False)
class FinitePcmSpace:
    point_ids: tuple[str, ...]
    dimension: int
    p_table: Mapping[tuple[str, str], ConeVector]
    index: Mapping[str, int] = field(init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "index", {x: i for i, x in enumerate(self.point_ids)})

    @property
    def cone(self) -> OrthantCone:
        return OrthantCone(self.dimension)

    def __len__(self) -> int:
        return len(self.point_ids)

    def __iter__(self):
        return iter(self.point_ids)

    def __contains__(self, x) -> bool:
        return label(x) in self.index

    def p(self, x, y) -> ConeVector:
        return self.p_table[label(x), label(y)]

    def point(self, x) -> str:
        x = label(x)
        if x not in self.index:
            raise KeyError(f"unknown point {x!r}")
        return x

    def subset(self, A: Iterable) -> tuple[str, ...]:
        """Validated, deduplicated subset in the space's point order."""
        pts = {self.point(a) for a in A}
        if not pts:
            raise ValueError("empty subset")
        return tuple(sorted(pts, key=self.index.__getitem__))

    def order_key(self, points: Sequence[str]) -> tuple[int, ...]:
        return tuple(self.index[x] for x in points)

    def zero(self) -> ConeVector:
        return ConeVector.zero(self.dimension)


def _numeric_labels(ids: Sequence[str], kind: str) -> dict[str, Fraction]:
    values = {}
    for x in ids:
        try:
            values[x] = as_rational(x)
        except ValueError:
            raise ValueError(f"{kind} recipe requires numeric labels, got {x!r}") from None
    return values


def build_space(ids: Iterable, dimension: int, recipe: MetricRecipe) -> FinitePcmSpace:
    ids = tuple(label(x) for x in ids)
    if not ids:
        raise ValueError("a space needs at least one point")
    if len(set(ids)) != len(ids):
        raise ValueError("point labels must be distinct")
    if dimension < 1:
        raise ValueError("dimension must be positive")
    table: dict[tuple[str, str], ConeVector] = {}
    pairs = list(itertools.combinations_with_replacement(ids, 2))

    if recipe.kind in ("absdiff-scaledmax", "max-alpha"):
        if dimension != 2:
            raise ValueError(f"{recipe.kind} is defined for dimension 2")
        vals = _numeric_labels(ids, recipe.kind)
        if recipe.kind == "max-alpha" and any(v < 0 for v in vals.values()):
            raise ValueError("max-alpha requires nonnegative labels")
        for x, y in pairs:
            m = max(vals[x], vals[y])
            if recipe.kind == "absdiff-scaledmax":
                a, b = recipe.params
                v = ConeVector((a * abs(vals[x] - vals[y]), b * m))
            else:
                (alpha,) = recipe.params
                v = ConeVector((m, alpha * m))
            table[x, y] = table[y, x] = v
    elif recipe.kind == "table":
        src = recipe.table
        for x, y in pairs:
            if (x, y) not in src:
                raise ValueError(f"missing table entry for ({x}, {y})")
            table[x, y] = table[y, x] = src[x, y]
        extra = {x for pair in src for x in pair} - set(ids)
        if extra:
            raise ValueError(f"table mentions unknown points {sorted(extra)}")
    else:
        d, w = recipe.d_table, recipe.weights
        for x in ids:
            if x not in w:
                raise ValueError(f"missing weight for point {x!r}")
        for x, y in pairs:
            if x == y:
                dxy = d.get((x, x), ConeVector.zero(dimension))
            elif (x, y) in d:
                dxy = d[x, y]
            else:
                raise ValueError(f"missing d-table entry for ({x}, {y})")
            table[x, y] = table[y, x] = dxy + lattice_sup((w[x], w[y]))

    if any(len(v) != dimension for v in table.values()):
        raise ValueError(f"table entries must have dimension {dimension}")
    return FinitePcmSpace(ids, dimension, table)


@dataclass(frozen=True)
class Violation:
    axiom: str
    witness: tuple[str, ...]
    lhs: ConeVector
    rhs: ConeVector
    slack: ConeVector


@dataclass(frozen=True)
class AxiomReport:
    passed: bool
    violations: tuple[Violation, ...]

    def by_axiom(self, axiom: str) -> tuple[Violation, ...]:
        return tuple(v for v in self.violations if v.axiom == axiom)


def _report(space_order, violations: list[Violation]) -> AxiomReport:
    violations.sort(key=lambda v: (v.axiom, tuple(space_order[x] for x in v.witness)))
    return AxiomReport(not violations, tuple(violations))


def _leq_violation(axiom, witness, lhs, rhs) -> Violation | None:
    if cone_leq(lhs, rhs):
        return None
    return Violation(axiom, witness, lhs, rhs, rhs - lhs)


def check_pcm_axioms(space: FinitePcmSpace) -> AxiomReport:
    """Exhaustive check of PCM1-PCM4, collecting every violation.

    PCM4 witnesses are written ``(x, z, y)`` for the inequality
    ``p(x,y) <= p(x,z) + p(z,y) - p(z,z)``.
    """
    ids, p = space.point_ids, space.p
    zero = space.zero()
    out: list[Violation] = []
    for x in ids:
        pxx = p(x, x)
        if not cone_contains(pxx):
            out.append(Violation("PCM1", (x, x), zero, pxx, pxx))
    for x, y in itertools.product(ids, ids):
        if x != y:
            v = _leq_violation("PCM1", (x, y), p(x, x), p(x, y))
            if v:
                out.append(v)
    for x, y in itertools.combinations(ids, 2):
        if p(x, x) == p(x, y) == p(y, y):
            out.append(Violation("PCM2", (x, y), p(x, y), p(x, x), zero))
    for x, y in itertools.product(ids, ids):
        if p(x, y) != p(y, x):
            out.append(Violation("PCM3", (x, y), p(x, y), p(y, x), p(y, x) - p(x, y)))
    for x, z, y in itertools.product(ids, ids, ids):
        v = _leq_violation("PCM4", (x, z, y), p(x, y), p(x, z) + p(z, y) - p(z, z))
        if v:
            out.append(v)
    return _report(space.index, out)


@dataclass(frozen=True, eq=False)
class InducedConeMetric:
    point_ids: tuple[str, ...]
    d_table: Mapping[tuple[str, str], ConeVector]

    @classmethod
    def from_table(cls, ids: Iterable, entries: Mapping) -> "InducedConeMetric":
        """Wrap an arbitrary symmetric table, e.g. to audit a candidate cone metric."""
        ids = tuple(label(x) for x in ids)
        table = _pair_table(entries, "d-table")
        for x, y in itertools.product(ids, ids):
            if (x, y) not in table:
                raise ValueError(f"missing d-table entry for ({x}, {y})")
        return cls(ids, table)

    def d(self, x, y) -> ConeVector:
        return self.d_table[label(x), label(y)]


class AxiomWarning(UserWarning):
    """The space handed to an operation does not satisfy the PCM axioms."""


def induce_cone_metric(space: FinitePcmSpace) -> InducedConeMetric:
    """``d(x,y) = 2p(x,y) - p(x,x) - p(y,y)``.

    Spaces failing the PCM axioms are accepted with an :class:`AxiomWarning`.
    """
    if not check_pcm_axioms(space).passed:
        warnings.warn("inducing a cone metric from a table that fails the PCM axioms", AxiomWarning)
    p = space.p
    table = {
        (x, y): 2 * p(x, y) - p(x, x) - p(y, y)
        for x, y in itertools.product(space.point_ids, space.point_ids)
    }
    return InducedConeMetric(space.point_ids, table)


def check_cm_axioms(metric: InducedConeMetric) -> AxiomReport:
    ids, d = metric.point_ids, metric.d
    order = {x: i for i, x in enumerate(ids)}
    zero = ConeVector.zero(len(d(ids[0], ids[0])))
    out: list[Violation] = []
    for x, y in itertools.product(ids, ids):
        dxy = d(x, y)
        if not cone_contains(dxy):
            out.append(Violation("CM1", (x, y), zero, dxy, dxy))
        elif (x == y) != dxy.is_zero():
            out.append(Violation("CM1", (x, y), dxy, zero, -dxy))
        if dxy != d(y, x):
            out.append(Violation("CM2", (x, y), dxy, d(y, x), d(y, x) - dxy))
    for x, z, y in itertools.product(ids, ids, ids):
        v = _leq_violation("CM3", (x, z, y), d(x, y), d(x, z) + d(z, y))
        if v:
            out.append(v)
    return _report(order, out)


def point_in_closure(space: FinitePcmSpace, a, A: Iterable) -> bool:
    """Closure criterion: ``a`` is in the closure of ``A`` iff ``p(a,A) = p(a,a)``."""
    a = space.point(a)
    A = space.subset(A)
    return lattice_inf(space.p(a, x) for x in A) == space.p(a, a)


def is_closed(space: FinitePcmSpace, A: Iterable) -> bool:
    A = space.subset(A)
    inside = set(A)
    return not any(point_in_closure(space, x, A) for x in space.point_ids if x not in inside)


def is_bounded(space: FinitePcmSpace, A: Iterable) -> bool:
    """Whether pairwise distances in ``A`` have a lattice upper bound.

    Every finite family in the orthant lattice has one.
    """
    A = space.subset(A)
    bound = lattice_sup(space.p(a, b) for a in A for b in A)
    return all(cone_leq(space.p(a, b), bound) for a in A for b in A)


def is_cbp_member(space: FinitePcmSpace, A: Iterable) -> bool:
    """Nonempty, closed and bounded."""
    return is_closed(space, A) and is_bounded(space, A)


_DENOMINATORS = (1, 2, 3, 4, 5, 6)


def _rand_rational(rng: random.Random, hi: int) -> Fraction:
    den = rng.choice(_DENOMINATORS)
    return Fraction(rng.randint(0, hi * den), den)


def random_lift_recipe(
    seed: int,
    n_points: int,
    dimension: int,
    *,
    weight_scale: int = 2,
) -> tuple[tuple[str, ...], MetricRecipe]:
    """Labels and weighted-lift recipe behind :func:`generate_random_space`."""
    if n_points < 1 or dimension < 1:
        raise ValueError("n_points and dimension must be positive")
    rng = random.Random(seed)
    coords: list[tuple[Fraction, ...]] = []
    while len(coords) < n_points:
        c = tuple(_rand_rational(rng, 3) for _ in range(dimension))
        if c not in coords:
            coords.append(c)
    ids = tuple(f"x{i}" for i in range(n_points))
    d_table = {
        (ids[i], ids[j]): ConeVector(abs(a - b) for a, b in zip(coords[i], coords[j]))
        for i, j in itertools.combinations(range(n_points), 2)
    }
    weights = {
        x: ConeVector(_rand_rational(rng, weight_scale) if weight_scale else 0 for _ in range(dimension))
        for x in ids
    }
    return ids, MetricRecipe.weighted_lift(d_table, weights)


def generate_random_space(
    seed: int,
    n_points: int,
    dimension: int,
    *,
    weight_scale: int = 2,
) -> FinitePcmSpace:
    """Seeded random space built as ``d(x,y) + sup{w(x), w(y)}``.

    ``d`` is the coordinatewise absolute difference of distinct random
    rational points of Q^dimension and ``w`` are random cone vectors.
    ``weight_scale=0`` gives ``w = 0`` and hence a cone metric.
    """
    ids, recipe = random_lift_recipe(seed, n_points, dimension, weight_scale=weight_scale)
    return build_space(ids, dimension, recipe)
