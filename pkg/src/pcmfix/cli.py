"""Command-line front end.

Exit codes: 0 when every checked property holds, 1 when one fails, 2 on
usage or input errors.  ``FILE`` may be a path or the name of a bundled
fixture (``kannan_example``, ``chatterjea_example``, ...).
"""

from __future__ import annotations

import argparse
import sys
import warnings
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Optional, Sequence

from pcmfix.contraction import ContractionParams, check_condition, generate_random_map, min_constant
from pcmfix.document import DocumentError, SpaceDocument, parse_document, serialize_document
from pcmfix.numerics import ConeVector, fmt_rat, rat_parse
from pcmfix.setdist import delta, hausdorff, point_set_dist
from pcmfix.solver import FIXED_POINT, check_cauchy_transfer, enumerate_fixed_points, iterate
from pcmfix.space import (
    AxiomWarning,
    build_space,
    check_cm_axioms,
    check_pcm_axioms,
    induce_cone_metric,
    is_bounded,
    is_closed,
    point_in_closure,
    random_lift_recipe,
)

FIXTURE_SUFFIX = ".pcm"


class UsageError(Exception):
    pass


def fixture_names() -> list[str]:
    root = resources.files("pcmfix") / "fixtures"
    return sorted(p.name[: -len(FIXTURE_SUFFIX)] for p in root.iterdir() if p.name.endswith(FIXTURE_SUFFIX))


def read_source(name: str) -> str:
    path = Path(name)
    if path.is_file():
        return path.read_text(encoding="utf-8")
    stem = name[: -len(FIXTURE_SUFFIX)] if name.endswith(FIXTURE_SUFFIX) else name
    fixture = resources.files("pcmfix") / "fixtures" / (stem + FIXTURE_SUFFIX)
    if fixture.is_file():
        return fixture.read_text(encoding="utf-8")
    raise UsageError(f"no such file or fixture: {name}")


def load(name: str) -> SpaceDocument:
    return parse_document(read_source(name))


def rational_arg(text: str) -> Fraction:
    try:
        return rat_parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def parse_subset(text: str) -> list[str]:
    body = text.strip()
    if body.startswith("{") and body.endswith("}"):
        body = body[1:-1]
    items = [s.strip() for s in body.split(",") if s.strip()]
    if not items:
        raise UsageError(f"empty subset {text!r}")
    return items


class Report:
    """Collects output lines in either text or record form."""

    def __init__(self, fmt: str):
        self.fmt = fmt
        self.lines: list[str] = []

    def text(self, line: str) -> None:
        if self.fmt == "text":
            self.lines.append(line)

    def record(self, _kind: str, /, **fields) -> None:
        if self.fmt == "records":
            parts = [_kind] + [f"{k.replace('_', '-')}={_rec(v)}" for k, v in fields.items()]
            self.lines.append(" ".join(parts))

    def emit(self) -> None:
        if self.lines:
            sys.stdout.write("\n".join(self.lines) + "\n")


def _rec(value) -> str:
    if isinstance(value, ConeVector):
        return "(" + ",".join(fmt_rat(c) for c in value) + ")"
    if isinstance(value, Fraction):
        return fmt_rat(value)
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (tuple, list)):
        return "(" + ",".join(str(v) for v in value) + ")"
    if value is None:
        return "none"
    return str(value)


def _tuple(points) -> str:
    return "(" + ", ".join(points) + ")"


def _set(points) -> str:
    return "{" + ", ".join(points) + "}"


def _axiom_lines(rep: Report, title: str, report) -> None:
    n = len(report.violations)
    rep.text(f"{title}: " + ("PASS" if report.passed else f"FAIL ({n} violation{'s' if n != 1 else ''})"))
    for v in report.violations:
        rep.text(f"  {v.axiom} at {_tuple(v.witness)}: lhs {v.lhs} rhs {v.rhs} slack {v.slack}")
        rep.record("violation", check=title, axiom=v.axiom, witness=v.witness, lhs=v.lhs, rhs=v.rhs, slack=v.slack)
    rep.record("result", check=title, passed=report.passed, violations=n)


def cmd_check_axioms(args, rep: Report) -> int:
    report = check_pcm_axioms(load(args.file).space())
    _axiom_lines(rep, "pcm-axioms", report)
    return 0 if report.passed else 1


def cmd_induce_metric(args, rep: Report) -> int:
    space = load(args.file).space()
    pcm = check_pcm_axioms(space)
    if not pcm.passed:
        rep.text("warning: table fails the PCM axioms; induced values may not form a cone metric")
        rep.record("warning", reason="pcm-axioms-fail", violations=len(pcm.violations))
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", AxiomWarning)
        metric = induce_cone_metric(space)
    ids = space.point_ids
    for i, x in enumerate(ids):
        for y in ids[i:]:
            rep.text(f"d({x}, {y}) = {metric.d(x, y)}")
            rep.record("d", x=x, y=y, value=metric.d(x, y))
    report = check_cm_axioms(metric)
    _axiom_lines(rep, "cm-axioms", report)
    return 0 if report.passed else 1


def cmd_check_closed(args, rep: Report) -> int:
    space = load(args.file).space()
    A = space.subset(parse_subset(args.subset))
    for x in space.point_ids:
        if x in A:
            continue
        dist = point_set_dist(space, x, A).value
        inside = point_in_closure(space, x, A)
        rep.text(f"p({x}, {_set(A)}) = {dist} vs p({x}, {x}) = {space.p(x, x)}: {'in closure' if inside else 'outside closure'}")
        rep.record("closure", point=x, dist=dist, self_dist=space.p(x, x), in_closure=inside)
    closed, bounded = is_closed(space, A), is_bounded(space, A)
    rep.text(f"{_set(A)}: {'closed' if closed else 'not closed'}, {'bounded' if bounded else 'unbounded'}")
    rep.record("result", subset=tuple(A), closed=closed, bounded=bounded)
    return 0 if closed and bounded else 1


def cmd_distances(args, rep: Report) -> int:
    space = load(args.file).space()
    A = space.subset(parse_subset(args.A))
    B = space.subset(parse_subset(args.B))
    for src, dst in ((A, B), (B, A)):
        for x in src:
            v = point_set_dist(space, x, dst).value
            rep.text(f"p({x}, {_set(dst)}) = {v}")
            rep.record("point-set", x=x, set=tuple(dst), value=v)
    for record, name, value in (
        ("delta-ab", f"delta({_set(A)}, {_set(B)})", delta(space, A, B).value),
        ("delta-ba", f"delta({_set(B)}, {_set(A)})", delta(space, B, A).value),
        ("hausdorff", f"H({_set(A)}, {_set(B)})", hausdorff(space, A, B).value),
    ):
        rep.text(f"{name} = {value}")
        rep.record(record, value=value)
    return 0


def params_from_args(args) -> ContractionParams:
    kind = args.kind
    try:
        if kind in ("kannan", "chatterjea"):
            if args.lam is None:
                raise UsageError(f"--kind {kind} needs --lambda")
            return ContractionParams(kind, lam=args.lam)
        if kind == "reich":
            if None in (args.alpha, args.beta, args.gamma):
                raise UsageError("--kind reich needs --alpha, --beta and --gamma")
            return ContractionParams.reich(args.alpha, args.beta, args.gamma)
        if args.k is None:
            raise UsageError("--kind nadler needs --k")
        return ContractionParams.nadler(args.k)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_check_contraction(args, rep: Report) -> int:
    doc = load(args.file)
    space = doc.space()
    tmap = doc.tmap(space)
    params = params_from_args(args)
    report = check_condition(space, tmap, params)
    for x in tmap.non_cbp_images(space):
        rep.text(f"note: image of {x} is not closed")
        rep.record("note", reason="image-not-closed", point=x)
    n = len(report.violations)
    verdict = "PASS" if report.passed else f"FAIL ({n} violation{'s' if n != 1 else ''})"
    rep.text(f"{params.kind} condition over {report.pair_count} ordered pairs: {verdict}")
    for v in report.violations:
        rep.text(f"  ({v.x}, {v.y}): H {v.lhs} rhs {v.rhs} slack {v.slack}")
        rep.record("violation", x=v.x, y=v.y, lhs=v.lhs, rhs=v.rhs, slack=v.slack)
    rep.record("result", kind=params.kind, pairs=report.pair_count, passed=report.passed, violations=n)
    return 0 if report.passed else 1


def cmd_min_lambda(args, rep: Report) -> int:
    doc = load(args.file)
    space = doc.space()
    mc = min_constant(space, doc.tmap(space), args.kind)
    where = "" if mc.binding is None else f" (binding pair ({mc.binding[0]}, {mc.binding[1]}), coordinate {mc.binding[2]})"
    if mc.feasible:
        rep.text(f"{args.kind}: minimal constant {fmt_rat(mc.value)}, theorem threshold {fmt_rat(mc.threshold)}{where}")
    else:
        rep.text(f"{args.kind}: infeasible, no constant works{where}")
    rep.record(
        "result",
        kind=args.kind,
        value=mc.value if mc.feasible else "infeasible",
        threshold=mc.threshold,
        below_threshold=mc.below_threshold,
        binding=None if mc.binding is None else (mc.binding[0], mc.binding[1], mc.binding[2]),
    )
    return 0 if mc.below_threshold else 1


def cmd_fixed_points(args, rep: Report) -> int:
    doc = load(args.file)
    space = doc.space()
    tmap = doc.tmap(space)
    fixed = [x for x in space.point_ids if x in enumerate_fixed_points(tmap)]
    rep.text(f"fixed points: {_set(fixed)}")
    rep.record("result", fixed_points=tuple(fixed))
    return 0


def _auto_params(space, tmap) -> ContractionParams:
    for kind in ("kannan", "chatterjea", "nadler"):
        mc = min_constant(space, tmap, kind)
        if mc.below_threshold:
            value = mc.value if mc.value > 0 else mc.threshold / 2
            return ContractionParams(kind, **({"k": value} if kind == "nadler" else {"lam": value}))
    raise UsageError("no one-parameter condition holds; pass --kind and its constants")


def cmd_solve(args, rep: Report) -> int:
    doc = load(args.file)
    space = doc.space()
    tmap = doc.tmap(space)
    params = _auto_params(space, tmap) if args.kind is None else params_from_args(args)
    if args.budget is not None and args.budget < 1:
        raise UsageError("--budget must be at least 1")
    try:
        trace, diag = iterate(space, tmap, space.point(args.start), params, h=args.h, budget=args.budget)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    const = params.k if params.kind == "nadler" else params.lam
    desc = (
        f"alpha={fmt_rat(params.alpha)} beta={fmt_rat(params.beta)} gamma={fmt_rat(params.gamma)}"
        if params.kind == "reich"
        else f"constant={fmt_rat(const)}"
    )
    rep.text(f"{params.kind} {desc} h={fmt_rat(trace.h)} k={fmt_rat(trace.k)}")
    rep.record("params", kind=params.kind, h=trace.h, k=trace.k)
    rep.text(f"x0 = {trace.points[0]}")
    for n, (step, x) in enumerate(zip(trace.steps, trace.points[1:]), start=1):
        rep.text(
            f"x{n} = {x}  p(x{n}, x{n - 1}) = {step.distance}"
            f"  selection {'ok' if step.selection_satisfied else 'FAILED'}  decay {'ok' if step.decay_ok else 'FAILED'}"
        )
        rep.record("step", n=n, point=x, distance=step.distance, selection=step.selection_satisfied, decay=step.decay_ok)
    rep.text(f"terminated: {trace.terminated}" + (f" at {trace.fixed_point}" if trace.fixed_point else ""))
    transfer = check_cauchy_transfer(space, trace)
    rep.text(
        f"geometric bound {'ok' if diag.geometric_bound_ok else 'FAILED'}, "
        f"Cauchy in p {'ok' if diag.p_cauchy_ok else 'FAILED'}, Cauchy in d {'ok' if diag.d_cauchy_ok else 'FAILED'}, "
        f"limit {'ok' if diag.limit_ok else 'FAILED'}"
    )
    rep.record(
        "result",
        terminated=trace.terminated,
        fixed_point=trace.fixed_point,
        geometric_bound=diag.geometric_bound_ok,
        cauchy_transfer=transfer,
        limit=diag.limit_ok,
    )
    return 0 if trace.terminated == FIXED_POINT else 1


def cmd_generate(args, rep: Report) -> int:
    if args.points < 1 or args.dim < 1:
        raise UsageError("--points and --dim must be positive")
    ids, recipe = random_lift_recipe(args.seed, args.points, args.dim)
    space = build_space(ids, args.dim, recipe)
    tmap = generate_random_map(args.seed, space)
    body = serialize_document(SpaceDocument(args.dim, ids, recipe, dict(tmap.assignments)))
    if rep.fmt == "text":
        rep.lines.append(f"# generate --seed {args.seed} --points {args.points} --dim {args.dim}")
        rep.lines.extend(body.rstrip("\n").split("\n"))
    else:
        rep.record("generated", seed=args.seed, points=args.points, dim=args.dim)
        rep.lines.extend("line " + line for line in body.rstrip("\n").split("\n"))
    return 0


def _add_params(sp, required: bool) -> None:
    sp.add_argument("--kind", choices=("kannan", "chatterjea", "reich", "nadler"), required=required)
    sp.add_argument("--lambda", dest="lam", type=rational_arg)
    sp.add_argument("--alpha", type=rational_arg)
    sp.add_argument("--beta", type=rational_arg)
    sp.add_argument("--gamma", type=rational_arg)
    sp.add_argument("--k", type=rational_arg)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "records"), default=argparse.SUPPRESS)

    parser = argparse.ArgumentParser(prog="pcmfix", description=__doc__.splitlines()[0], parents=[common])
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("check-axioms", parents=[common], help="exhaustive PCM1-PCM4 check")
    sp.add_argument("file")
    sp.set_defaults(func=cmd_check_axioms)

    sp = sub.add_parser("induce-metric", parents=[common], help="induced cone metric and CM1-CM3")
    sp.add_argument("file")
    sp.set_defaults(func=cmd_induce_metric)

    sp = sub.add_parser("check-closed", parents=[common], help="closure test for a subset, e.g. {0,1}")
    sp.add_argument("subset")
    sp.add_argument("file")
    sp.set_defaults(func=cmd_check_closed)

    sp = sub.add_parser("distances", parents=[common], help="p(x,A), delta and H between two subsets")
    sp.add_argument("A")
    sp.add_argument("B")
    sp.add_argument("file")
    sp.set_defaults(func=cmd_distances)

    sp = sub.add_parser("check-contraction", parents=[common], help="check a contraction condition")
    _add_params(sp, required=True)
    sp.add_argument("file")
    sp.set_defaults(func=cmd_check_contraction)

    sp = sub.add_parser("min-lambda", parents=[common], help="least constant for a one-parameter condition")
    sp.add_argument("--kind", choices=("kannan", "chatterjea", "nadler"), required=True)
    sp.add_argument("file")
    sp.set_defaults(func=cmd_min_lambda)

    sp = sub.add_parser("fixed-points", parents=[common], help="brute-force fixed points of the map")
    sp.add_argument("file")
    sp.set_defaults(func=cmd_fixed_points)

    sp = sub.add_parser("solve", parents=[common], help="run the iteration from a start point")
    sp.add_argument("--start", required=True)
    sp.add_argument("--h", type=rational_arg)
    sp.add_argument("--budget", type=int)
    _add_params(sp, required=False)
    sp.add_argument("file")
    sp.set_defaults(func=cmd_solve)

    sp = sub.add_parser("generate", parents=[common], help="seeded random space and map")
    sp.add_argument("--seed", type=int, required=True)
    sp.add_argument("--points", type=int, required=True)
    sp.add_argument("--dim", type=int, required=True)
    sp.set_defaults(func=cmd_generate)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    rep = Report(getattr(args, "format", "text"))
    try:
        code = args.func(args, rep)
    except (UsageError, DocumentError, KeyError, ValueError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"pcmfix: error: {msg}", file=sys.stderr)
        return 2
    rep.emit()
    return code


if __name__ == "__main__":
    sys.exit(main())
