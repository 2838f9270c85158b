"""Seeded corpus audits of the fixed-point claims.

Each instance is a random space plus a random map.  For every condition the
instance satisfies (with closed images), the iteration is run from every
start and its outcome compared against the brute-force fixed-point scan.
Anything unexpected becomes a :class:`Finding`; findings are written as JSON
lines.
"""

from __future__ import annotations

import json
import random
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Optional, TextIO

from pcmfix.contraction import (
    ContractionParams,
    MultiValuedMap,
    check_condition,
    generate_random_map,
    generate_sink_map,
    min_constant,
)
from pcmfix.numerics import fmt_rat
from pcmfix.setdist import point_set_dist
from pcmfix.solver import FIXED_POINT, enumerate_fixed_points, iterate
from pcmfix.space import FinitePcmSpace, generate_random_space, point_in_closure

__all__ = [
    "FINDING_KINDS",
    "FINDING_SCHEMA",
    "Finding",
    "InstanceAudit",
    "corpus_instance",
    "audit_instance",
    "audit_corpus",
    "write_findings",
]

SELECTION_FAILURE = "selection-failure"
NON_TERMINATION = "non-termination"
NOT_FIXED = "not-fixed"
CLOSURE_MISMATCH = "closure-mismatch"
FINDING_KINDS = (SELECTION_FAILURE, NON_TERMINATION, NOT_FIXED, CLOSURE_MISMATCH)

FINDING_SCHEMA = {
    "type": "object",
    "required": ["instance", "seed", "kind", "condition", "constant", "start", "trace", "detail"],
    "additionalProperties": False,
    "properties": {
        "instance": {"type": "string"},
        "seed": {"type": ["integer", "null"]},
        "kind": {"enum": list(FINDING_KINDS)},
        "condition": {"enum": ["kannan", "chatterjea", "reich", "nadler"]},
        "constant": {"type": "string", "pattern": r"^-?\d+(/\d+)?$"},
        "start": {"type": "string"},
        "trace": {"type": "array", "items": {"type": "string"}},
        "detail": {"type": "string"},
    },
}


@dataclass(frozen=True)
class Finding:
    instance: str
    seed: Optional[int]
    kind: str
    condition: str
    constant: str
    start: str
    trace: list[str]
    detail: str

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)


@dataclass
class InstanceAudit:
    instance: str
    seed: Optional[int]
    passing_conditions: list[str] = field(default_factory=list)
    runs: int = 0
    findings: list[Finding] = field(default_factory=list)


def corpus_instance(
    seed: int, max_points: int = 6, max_dim: int = 3, tries: int = 5
) -> tuple[FinitePcmSpace, MultiValuedMap]:
    """The seed fixes size, dimension, weight scale and map.

    Up to ``tries`` sink maps are drawn and the first one satisfying some
    one-parameter condition with a positive constant is kept; failing that,
    an unbiased random map is used.
    """
    n = 1 + seed % max_points
    dim = 1 + (seed // max_points) % max_dim
    weight_scale = (0, 1, 2)[(seed // (max_points * max_dim)) % 3]
    space = generate_random_space(seed, n, dim, weight_scale=weight_scale)
    rng = random.Random(seed)
    for _ in range(tries):
        tmap = generate_sink_map(rng, space)
        for kind in ("kannan", "chatterjea", "nadler"):
            mc = min_constant(space, tmap, kind)
            if mc.below_threshold and mc.value > 0:
                return space, tmap
    return space, generate_random_map(seed, space)


def _candidate_params(space: FinitePcmSpace, tmap: MultiValuedMap) -> Iterator[ContractionParams]:
    """Each one-parameter condition at its least admissible constant, when one exists."""
    for kind in ("kannan", "chatterjea", "nadler"):
        mc = min_constant(space, tmap, kind)
        if not mc.below_threshold:
            continue
        # a zero minimum still needs a positive constant
        value = mc.value if mc.value > 0 else mc.threshold / 2
        yield ContractionParams(kind, **({"k": value} if kind == "nadler" else {"lam": value}))


def _constant(params: ContractionParams) -> Fraction:
    return params.k if params.kind == "nadler" else params.lam


def audit_instance(
    seed: Optional[int], space: FinitePcmSpace, tmap: MultiValuedMap, instance: Optional[str] = None
) -> InstanceAudit:
    """Audit one instance; ``instance`` names it in findings (default ``seed-<n>``)."""
    result = InstanceAudit(instance or f"seed-{seed}", seed)
    if not tmap.images_in_cbp(space):
        return result
    fixed = enumerate_fixed_points(tmap)
    for params in _candidate_params(space, tmap):
        if not check_condition(space, tmap, params).passed:
            raise AssertionError(f"{result.instance}: min_constant disagrees with check_condition")
        result.passing_conditions.append(params.kind)
        constant = fmt_rat(_constant(params))
        for x0 in space.point_ids:
            trace, _ = iterate(space, tmap, x0, params)
            result.runs += 1

            def log(kind: str, detail: str) -> None:
                result.findings.append(
                    Finding(result.instance, seed, kind, params.kind, constant, x0, list(trace.points), detail)
                )

            failed = [i for i, s in enumerate(trace.steps) if not s.selection_satisfied]
            if failed:
                log(SELECTION_FAILURE, f"no member met the selection bound at steps {failed}")
            if trace.terminated != FIXED_POINT:
                log(NON_TERMINATION, trace.terminated)
                continue
            x = trace.fixed_point
            if x not in fixed:
                log(NOT_FIXED, f"{x} is not a fixed point")
            if point_set_dist(space, x, tmap.image(x)).value != space.p(x, x) or not point_in_closure(
                space, x, tmap.image(x)
            ):
                log(CLOSURE_MISMATCH, f"closure criterion fails at {x}")
    return result


def audit_corpus(seeds: Iterable[int], max_points: int = 6, max_dim: int = 3) -> list[InstanceAudit]:
    return [audit_instance(s, *corpus_instance(s, max_points, max_dim)) for s in seeds]


def write_findings(audits: Iterable[InstanceAudit], fh: TextIO) -> int:
    count = 0
    for audit in audits:
        for finding in audit.findings:
            fh.write(finding.to_json() + "\n")
            count += 1
    return count
