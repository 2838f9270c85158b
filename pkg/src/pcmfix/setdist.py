"""Point-to-set and set-to-set distances in the orthant lattice."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from pcmfix.numerics import (
    ConeVector,
    as_rational,
    cone_leq,
    lattice_inf,
    lattice_sup,
    max_norm,
)
from pcmfix.space import FinitePcmSpace

__all__ = [
    "SetDistanceResult",
    "SelectionResult",
    "point_set_dist",
    "delta",
    "hausdorff",
    "select",
]


@dataclass(frozen=True)
class SetDistanceResult:
    """A lattice bound together with a member attaining it, if one does.

    ``attained_by`` is a point for ``p(x, A)`` and a point of the first set
    for ``delta``/``hausdorff``; ``None`` when no single member's value equals
    the bound.
    """

    value: ConeVector
    attained_by: Optional[str] = None


@dataclass(frozen=True)
class SelectionResult:
    chosen: str
    satisfied: bool
    bound: ConeVector
    achieved: ConeVector


def _attained(values: dict[str, ConeVector], bound: ConeVector) -> Optional[str]:
    return next((x for x, v in values.items() if v == bound), None)


def point_set_dist(space: FinitePcmSpace, x, A: Iterable) -> SetDistanceResult:
    """``p(x, A) = inf{p(x, a) : a in A}``."""
    x = space.point(x)
    values = {a: space.p(x, a) for a in space.subset(A)}
    value = lattice_inf(values.values())
    return SetDistanceResult(value, _attained(values, value))


def delta(space: FinitePcmSpace, A: Iterable, B: Iterable) -> SetDistanceResult:
    """``delta(A, B) = sup{p(a, B) : a in A}``."""
    B = space.subset(B)
    values = {a: point_set_dist(space, a, B).value for a in space.subset(A)}
    value = lattice_sup(values.values())
    return SetDistanceResult(value, _attained(values, value))


def hausdorff(space: FinitePcmSpace, A: Iterable, B: Iterable) -> SetDistanceResult:
    """``H(A, B) = sup{delta(A, B), delta(B, A)}``.

    ``attained_by`` is the witness of whichever one-sided distance equals H.
    """
    ab = delta(space, A, B)
    ba = delta(space, B, A)
    value = lattice_sup((ab.value, ba.value))
    if ab.value == value:
        witness = ab.attained_by
    elif ba.value == value:
        witness = ba.attained_by
    else:
        witness = None
    return SetDistanceResult(value, witness)


def select(space: FinitePcmSpace, a, A: Iterable, B: Iterable, h) -> SelectionResult:
    """Pick ``b`` in ``B`` with ``p(a, b) <= h H(A, B)``.

    Such a ``b`` need not exist in the lattice setting.  When none does, the
    member of ``B`` closest to ``a`` in max-norm is returned with
    ``satisfied=False``.  Ties go to the smaller norm, then to point order.
    """
    h = as_rational(h)
    if h <= 1:
        raise ValueError(f"selection constant must exceed 1, got {h}")
    a = space.point(a)
    A = space.subset(A)
    if a not in A:
        raise ValueError(f"{a!r} is not a member of the first set")
    B = space.subset(B)
    bound = h * hausdorff(space, A, B).value
    ranked = sorted(B, key=lambda b: (max_norm(space.p(a, b)), space.index[b]))
    for b in ranked:
        if cone_leq(space.p(a, b), bound):
            return SelectionResult(b, True, bound, space.p(a, b))
    b = ranked[0]
    return SelectionResult(b, False, bound, space.p(a, b))


def lemma_h_floor(space: FinitePcmSpace, a, A: Iterable, B: Iterable) -> Optional[Fraction]:
    """Smallest ``h`` for which some ``b`` in ``B`` meets ``p(a,b) <= h H(A,B)``.

    ``None`` when no finite ``h`` works (a positive coordinate of ``p(a,b)``
    sits over a zero coordinate of ``H`` for every ``b``).
    """
    a = space.point(a)
    H = hausdorff(space, A, B).value
    best: Optional[Fraction] = None
    for b in space.subset(B):
        need = Fraction(0)
        for num, den in zip(space.p(a, b), H):
            if num == 0:
                continue
            if den == 0:
                break
            need = max(need, num / den)
        else:
            best = need if best is None else min(best, need)
    return best
