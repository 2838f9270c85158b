"""Kannan, Chatterjea, Reich and Nadler-type conditions for multi-valued maps.

Every condition has the shape ``H(Tx, Ty) <= rhs(x, y)`` in the cone order
and is checked over all ordered pairs, ``x == y`` included.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional

from pcmfix.numerics import ConeVector, as_rational, cone_leq, max_norm
from pcmfix.setdist import hausdorff, point_set_dist
from pcmfix.space import FinitePcmSpace, is_cbp_member, label

__all__ = [
    "KINDS",
    "MultiValuedMap",
    "ContractionParams",
    "ContractionReport",
    "PairViolation",
    "MinConstant",
    "check_condition",
    "check_with_constant",
    "min_constant",
    "check_reich_specializations",
    "generate_random_map",
    "generate_sink_map",
]

KINDS = ("kannan", "chatterjea", "reich", "nadler")
HALF = Fraction(1, 2)


@dataclass(frozen=True)
class MultiValuedMap:
    """``T : X -> 2^X`` as a mapping from each point to a nonempty image."""

    assignments: Mapping[str, tuple[str, ...]]

    def __init__(self, assignments: Mapping):
        norm = {}
        for x, image in assignments.items():
            image = tuple(dict.fromkeys(label(y) for y in image))
            if not image:
                raise ValueError(f"empty image for point {x!r}")
            norm[label(x)] = image
        object.__setattr__(self, "assignments", norm)

    @classmethod
    def on(cls, space: FinitePcmSpace, assignments: Mapping) -> "MultiValuedMap":
        """Build and validate against ``space``; images are kept in point order."""
        tmap = cls(assignments)
        tmap.validate(space)
        return cls({x: space.subset(tmap.image(x)) for x in space.point_ids})

    def image(self, x) -> tuple[str, ...]:
        return self.assignments[label(x)]

    def validate(self, space: FinitePcmSpace) -> None:
        missing = [x for x in space.point_ids if x not in self.assignments]
        if missing:
            raise ValueError(f"map has no image for {missing}")
        for x, image in self.assignments.items():
            space.point(x)
            for y in image:
                space.point(y)

    def images_in_cbp(self, space: FinitePcmSpace) -> bool:
        return all(is_cbp_member(space, self.image(x)) for x in space.point_ids)

    def non_cbp_images(self, space: FinitePcmSpace) -> list[str]:
        return [x for x in space.point_ids if not is_cbp_member(space, self.image(x))]


@dataclass(frozen=True)
class ContractionParams:
    kind: str
    lam: Optional[Fraction] = None
    alpha: Optional[Fraction] = None
    beta: Optional[Fraction] = None
    gamma: Optional[Fraction] = None
    k: Optional[Fraction] = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown contraction kind {self.kind!r}")
        for name in ("lam", "alpha", "beta", "gamma", "k"):
            value = getattr(self, name)
            if value is not None:
                object.__setattr__(self, name, as_rational(value))
        if self.kind in ("kannan", "chatterjea"):
            if self.lam is None or not 0 < self.lam < HALF:
                raise ValueError(f"{self.kind} needs 0 < lambda < 1/2, got {self.lam}")
        elif self.kind == "reich":
            coeffs = (self.alpha, self.beta, self.gamma)
            if any(c is None or c < 0 for c in coeffs) or sum(coeffs) >= 1:
                raise ValueError("reich needs alpha, beta, gamma >= 0 with alpha+beta+gamma < 1")
        elif self.k is None or not 0 < self.k < 1:
            raise ValueError(f"nadler needs 0 < k < 1, got {self.k}")

    @classmethod
    def kannan(cls, lam) -> "ContractionParams":
        return cls("kannan", lam=lam)

    @classmethod
    def chatterjea(cls, lam) -> "ContractionParams":
        return cls("chatterjea", lam=lam)

    @classmethod
    def reich(cls, alpha, beta, gamma) -> "ContractionParams":
        return cls("reich", alpha=alpha, beta=beta, gamma=gamma)

    @classmethod
    def nadler(cls, k) -> "ContractionParams":
        return cls("nadler", k=k)


@dataclass(frozen=True)
class PairViolation:
    x: str
    y: str
    lhs: ConeVector
    rhs: ConeVector
    slack: ConeVector


@dataclass(frozen=True)
class ContractionReport:
    passed: bool
    violations: tuple[PairViolation, ...]
    pair_count: int


class _Terms:
    """Memoised ``H(Tx,Ty)``, ``p(Tx,y)`` and ``p(x,y)`` for one space and map."""

    def __init__(self, space: FinitePcmSpace, tmap: MultiValuedMap):
        tmap.validate(space)
        self.space = space
        self.tmap = tmap
        self._h: dict[tuple[str, str], ConeVector] = {}
        self._pt: dict[tuple[str, str], ConeVector] = {}

    def H(self, x, y) -> ConeVector:
        key = (x, y) if x <= y else (y, x)
        if key not in self._h:
            T = self.tmap.image
            self._h[key] = hausdorff(self.space, T(x), T(y)).value
        return self._h[key]

    def pT(self, x, y) -> ConeVector:
        """``p(Tx, y)``, i.e. the distance from ``y`` to the image of ``x``."""
        if (x, y) not in self._pt:
            self._pt[x, y] = point_set_dist(self.space, y, self.tmap.image(x)).value
        return self._pt[x, y]

    def pairs(self):
        return itertools.product(self.space.point_ids, repeat=2)


def _rhs(terms: _Terms, kind: str, coeffs: tuple[Fraction, ...], x: str, y: str) -> ConeVector:
    if kind == "kannan":
        (lam,) = coeffs
        return lam * (terms.pT(x, x) + terms.pT(y, y))
    if kind == "chatterjea":
        (lam,) = coeffs
        return lam * (terms.pT(x, y) + terms.pT(y, x))
    if kind == "nadler":
        (k,) = coeffs
        return k * terms.space.p(x, y)
    alpha, beta, gamma = coeffs
    return alpha * terms.pT(x, x) + beta * terms.pT(y, y) + gamma * terms.space.p(x, y)


def _evaluate(terms: _Terms, kind: str, coeffs: tuple[Fraction, ...]) -> ContractionReport:
    out = []
    count = 0
    for x, y in terms.pairs():
        count += 1
        lhs = terms.H(x, y)
        rhs = _rhs(terms, kind, coeffs, x, y)
        if not cone_leq(lhs, rhs):
            out.append(PairViolation(x, y, lhs, rhs, rhs - lhs))
    return ContractionReport(not out, tuple(out), count)


def _coeffs(params: ContractionParams) -> tuple[Fraction, ...]:
    if params.kind == "reich":
        return (params.alpha, params.beta, params.gamma)
    if params.kind == "nadler":
        return (params.k,)
    return (params.lam,)


def check_condition(space: FinitePcmSpace, tmap: MultiValuedMap, params: ContractionParams) -> ContractionReport:
    return _evaluate(_Terms(space, tmap), params.kind, _coeffs(params))


def check_with_constant(space: FinitePcmSpace, tmap: MultiValuedMap, kind: str, value) -> ContractionReport:
    """Evaluate a one-parameter condition at any nonnegative constant.

    Unlike :func:`check_condition`, the constant is not restricted to the
    range where the fixed-point theorems apply.
    """
    value = as_rational(value)
    if value < 0:
        raise ValueError("constant must be nonnegative")
    if kind not in ("kannan", "chatterjea", "nadler"):
        raise ValueError(f"not a one-parameter kind: {kind!r}")
    return _evaluate(_Terms(space, tmap), kind, (value,))


@dataclass(frozen=True)
class MinConstant:
    """Least constant making a one-parameter condition hold.

    ``value`` is ``None`` when no constant works.  ``binding`` is the first
    pair (in point order) and coordinate attaining the value.
    """

    kind: str
    value: Optional[Fraction]
    threshold: Fraction
    binding: Optional[tuple[str, str, int]] = None

    @property
    def feasible(self) -> bool:
        return self.value is not None

    @property
    def below_threshold(self) -> bool:
        return self.value is not None and self.value < self.threshold


def min_constant(space: FinitePcmSpace, tmap: MultiValuedMap, kind: str) -> MinConstant:
    if kind not in ("kannan", "chatterjea", "nadler"):
        raise ValueError(f"min_constant supports kannan, chatterjea, nadler; got {kind!r}")
    terms = _Terms(space, tmap)
    threshold = Fraction(1) if kind == "nadler" else HALF
    best = Fraction(0)
    binding = None
    for x, y in terms.pairs():
        if kind == "kannan":
            base = terms.pT(x, x) + terms.pT(y, y)
        elif kind == "chatterjea":
            base = terms.pT(x, y) + terms.pT(y, x)
        else:
            base = space.p(x, y)
        for i, (num, den) in enumerate(zip(terms.H(x, y), base)):
            if num == 0:
                continue
            if den == 0:
                return MinConstant(kind, None, threshold, (x, y, i))
            if num / den > best:
                best, binding = num / den, (x, y, i)
    return MinConstant(kind, best, threshold, binding)


def check_reich_specializations(space: FinitePcmSpace, tmap: MultiValuedMap, lam=None, k=None) -> bool:
    """Compare Reich with its Kannan (alpha=beta=lam, gamma=0) and Nadler
    (alpha=beta=0, gamma=k) specialisations, violation for violation."""
    if lam is None and k is None:
        raise ValueError("give lam, k or both")
    same = True
    if lam is not None:
        r = check_condition(space, tmap, ContractionParams.reich(lam, lam, 0))
        same &= r == check_condition(space, tmap, ContractionParams.kannan(lam))
    if k is not None:
        r = check_condition(space, tmap, ContractionParams.reich(0, 0, k))
        same &= r == check_condition(space, tmap, ContractionParams.nadler(k))
    return same


def generate_random_map(seed: int, space: FinitePcmSpace, *, sink_bias: float = 0.5) -> MultiValuedMap:
    """Seeded random map.

    With probability ``sink_bias`` each point is sent into a fixed random
    "sink" subset, which makes contractive instances common enough to study.
    """
    rng = random.Random(seed)
    ids = space.point_ids
    sink = rng.sample(ids, rng.randint(1, max(1, len(ids) // 2)))
    assignments = {}
    for x in ids:
        if rng.random() < sink_bias:
            image = rng.sample(sink, rng.randint(1, len(sink)))
        else:
            image = rng.sample(ids, rng.randint(1, len(ids)))
        assignments[x] = image
    return MultiValuedMap.on(space, assignments)


def generate_sink_map(rng: random.Random, space: FinitePcmSpace) -> MultiValuedMap:
    """Random map whose images all fall in a few points clustered around one
    random centre; such maps are often contractive."""
    ids = list(space.point_ids)
    centre = rng.choice(ids)
    near = sorted(ids, key=lambda y: (max_norm(space.p(centre, y)), space.index[y]))
    core = near[: rng.randint(1, max(1, len(ids) // 2))]
    return MultiValuedMap.on(space, {x: rng.sample(core, rng.randint(1, len(core))) for x in ids})
