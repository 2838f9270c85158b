"""Constructive multi-valued Picard iteration with exact diagnostics.

From ``x0`` a point ``x1`` of ``T x0`` is taken, and each later point is
chosen from ``T x_n`` by :func:`pcmfix.setdist.select` against the bound
``h H(T x_{n-1}, T x_n)``.  On a contractive instance consecutive distances
then shrink by the ratio ``k``:

* Kannan / Chatterjea: ``k = h lam / (1 - h lam)``
* Reich: ``k = h (beta + gamma) / (1 - h alpha)``

The selection constant must satisfy ``1 < h < 1/s`` (``s = 2 lam`` or
``s = alpha + beta + gamma``) for ``k < 1``.  ``h = 1/s`` exactly gives
``k = 1``; it is accepted so that case can be inspected.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from pcmfix.contraction import ContractionParams, MultiValuedMap
from pcmfix.numerics import ConeVector, as_rational, cone_leq, max_norm
from pcmfix.setdist import point_set_dist, select
from pcmfix.space import FinitePcmSpace

__all__ = [
    "StepRecord",
    "IterationTrace",
    "CauchyDiagnostics",
    "enumerate_fixed_points",
    "default_h",
    "decay_ratio",
    "iterate",
    "cauchy_diagnostics",
    "check_cauchy_transfer",
]

FIXED_POINT = "fixed-point"
BUDGET_EXHAUSTED = "budget-exhausted"
CYCLE_DETECTED = "cycle-detected"


@dataclass(frozen=True)
class StepRecord:
    """Step ``x_n -> x_{n+1}``.  The first step has no selection or decay test."""

    distance: ConeVector
    selection_satisfied: bool
    decay_ok: bool


@dataclass(frozen=True)
class IterationTrace:
    points: tuple[str, ...]
    h: Fraction
    k: Fraction
    steps: tuple[StepRecord, ...]
    terminated: str
    fixed_point: Optional[str] = None
    cycle_start: Optional[int] = None

    @property
    def all_selections_satisfied(self) -> bool:
        return all(s.selection_satisfied for s in self.steps)

    @property
    def all_decay_ok(self) -> bool:
        return all(s.decay_ok for s in self.steps)


@dataclass(frozen=True)
class CauchyDiagnostics:
    geometric_bound_ok: bool
    p_cauchy_ok: bool
    d_cauchy_ok: bool
    limit_ok: bool


def enumerate_fixed_points(tmap: MultiValuedMap) -> frozenset[str]:
    """All ``x`` with ``x in T x``, by exhaustive scan."""
    return frozenset(x for x, image in tmap.assignments.items() if x in image)


def _contraction_sum(params: ContractionParams) -> Fraction:
    if params.kind in ("kannan", "chatterjea"):
        return 2 * params.lam
    if params.kind == "reich":
        return params.alpha + params.beta + params.gamma
    return params.k


def default_h(params: ContractionParams) -> Fraction:
    """Midpoint of ``(1, 1/s)``, the admissible range of selection constants."""
    s = _contraction_sum(params)
    if s == 0:
        raise ValueError("all contraction coefficients are zero; no selection constant is defined")
    return (1 + 1 / s) / 2


def decay_ratio(params: ContractionParams, h) -> Fraction:
    h = as_rational(h)
    if params.kind in ("kannan", "chatterjea"):
        grow, shrink = params.lam, params.lam
    elif params.kind == "reich":
        shrink, grow = params.alpha, params.beta + params.gamma
    else:
        shrink, grow = Fraction(0), params.k
    if h * shrink >= 1:
        raise ValueError(f"h = {h} makes the decay ratio undefined")
    return h * grow / (1 - h * shrink)


def _nearest(space: FinitePcmSpace, x: str, image) -> str:
    return min(image, key=lambda b: (max_norm(space.p(x, b)), space.index[b]))


def iterate(
    space: FinitePcmSpace,
    tmap: MultiValuedMap,
    x0,
    params: ContractionParams,
    h=None,
    budget: Optional[int] = None,
    first=None,
) -> tuple[IterationTrace, CauchyDiagnostics]:
    """Run the iteration from ``x0``.

    ``first`` forces the choice of ``x1`` in ``T x0``; otherwise the member
    nearest ``x0`` in max-norm is used.  The run stops at the first
    ``x_n in T x_n``, when a (point, predecessor) pair repeats, or after
    ``budget`` steps (default ``4 |X|^2``).
    """
    tmap.validate(space)
    h = default_h(params) if h is None else as_rational(h)
    if h <= 1:
        raise ValueError(f"selection constant must exceed 1, got {h}")
    k = decay_ratio(params, h)
    budget = 4 * len(space) ** 2 if budget is None else budget
    if budget < 1:
        raise ValueError("budget must be at least 1")
    T = tmap.image

    x = space.point(x0)
    points = [x]
    steps: list[StepRecord] = []
    seen: dict[tuple[str, str], int] = {}
    terminated = BUDGET_EXHAUSTED
    cycle_start = None

    while True:
        if x in T(x):
            terminated = FIXED_POINT
            break
        if len(steps) >= budget:
            break
        if not steps:
            nxt = space.point(first) if first is not None else _nearest(space, x, T(x))
            if nxt not in T(x):
                raise ValueError(f"{nxt!r} is not in the image of {x!r}")
            steps.append(StepRecord(space.p(nxt, x), True, True))
        else:
            prev = points[-2]
            sel = select(space, x, T(prev), T(x), h)
            nxt = sel.chosen
            decay = cone_leq(space.p(nxt, x), k * space.p(x, prev))
            steps.append(StepRecord(space.p(nxt, x), sel.satisfied, decay))
        points.append(nxt)
        state = (nxt, x)
        if state in seen and nxt not in T(nxt):
            terminated = CYCLE_DETECTED
            cycle_start = seen[state]
            break
        seen[state] = len(points) - 1
        x = nxt

    trace = IterationTrace(
        tuple(points),
        h,
        k,
        tuple(steps),
        terminated,
        points[-1] if terminated == FIXED_POINT else None,
        cycle_start,
    )
    return trace, cauchy_diagnostics(space, tmap, trace)


def _tail(trace: IterationTrace) -> tuple[str, ...]:
    """Points the sequence keeps visiting once continued past the trace."""
    if trace.terminated == FIXED_POINT:
        return (trace.fixed_point,)
    if trace.terminated == CYCLE_DETECTED:
        return tuple(dict.fromkeys(trace.points[trace.cycle_start : -1]))
    return tuple(dict.fromkeys(trace.points[len(trace.points) // 2 :]))


def _constant_on(values) -> bool:
    values = list(values)
    return all(v == values[0] for v in values)


def _transfer(space: FinitePcmSpace, trace: IterationTrace) -> tuple[bool, bool]:
    tail = _tail(trace)
    p = space.p
    p_ok = _constant_on(p(u, v) for u in tail for v in tail)
    d_ok = all(
        (2 * p(u, v) - p(u, u) - p(v, v)).is_zero() for u in tail for v in tail
    )
    return p_ok, d_ok


def check_cauchy_transfer(space: FinitePcmSpace, trace: IterationTrace) -> bool:
    """Whether the continued sequence is Cauchy in both ``(X, p)`` and ``(X, d)``.

    A sequence in a finite space is Cauchy exactly when ``p`` is eventually
    constant along it, which is decided on the points it revisits forever.
    """
    if not trace.points:
        raise ValueError("empty trace")
    return all(_transfer(space, trace))


def _geometric_bound_ok(space: FinitePcmSpace, trace: IterationTrace) -> bool:
    pts = trace.points
    if len(pts) < 2:
        return True
    k = trace.k
    if k >= 1:
        return False
    first = max_norm(space.p(pts[1], pts[0]))
    M = space.cone.normal_constant
    for n in range(len(pts)):
        bound = k**n / (1 - k) * M * first
        for m in range(n + 1, len(pts)):
            if max_norm(space.p(pts[m], pts[n])) > bound:
                return False
    return True


def cauchy_diagnostics(space: FinitePcmSpace, tmap: MultiValuedMap, trace: IterationTrace) -> CauchyDiagnostics:
    p_ok, d_ok = _transfer(space, trace)
    limit_ok = False
    if trace.terminated == FIXED_POINT:
        x = trace.fixed_point
        limit_ok = point_set_dist(space, x, tmap.image(x)).value == space.p(x, x)
    return CauchyDiagnostics(_geometric_bound_ok(space, trace), p_ok, d_ok, limit_ok)
