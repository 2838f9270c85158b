"""Text format for a space and an optional map.

::

    # comments run to end of line
    dimension: 2
    points: 0, 1, 4
    metric: absdiff-scaledmax 1/4 1/2
    map:
      0 -> {0}
      1 -> {0}
      4 -> {0, 1}

``metric`` is one of ``table`` (followed by indented ``x, y -> (r1, ..., rn)``
lines, diagonal mandatory, symmetric closure applied),
``absdiff-scaledmax a b``, ``max-alpha alpha`` or ``weighted-lift`` (with
top-level ``d-table:`` and ``w:`` blocks, the latter holding ``x -> (...)``
lines).  Numbers are exact rationals; floating-point literals are rejected.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Mapping, Optional

from pcmfix.contraction import MultiValuedMap
from pcmfix.numerics import ConeVector, fmt_rat, rat_parse
from pcmfix.space import FinitePcmSpace, MetricRecipe, build_space

__all__ = ["DocumentError", "SpaceDocument", "parse_document", "serialize_document"]

_LABEL = re.compile(r"-?[A-Za-z0-9_./+]+(?:-[A-Za-z0-9_./+]+)*")
_RATIONAL = re.compile(r"-?\d+(?:/\d+)?")
_FLOATISH = re.compile(r"-?\d*\.\d*(?:[eE][-+]?\d+)?|-?\d+(?:/\d+)?[eE][-+]?\d+")
_KEYS = ("dimension", "points", "metric", "d-table", "w", "map")
_BLOCK_KEYS = ("d-table", "w", "map")


class DocumentError(ValueError):
    def __init__(self, message: str, line: Optional[int] = None, col: Optional[int] = None):
        self.line, self.col = line, col
        where = f"line {line}, col {col}: " if line is not None else ""
        super().__init__(where + message)


@dataclass(frozen=True)
class SpaceDocument:
    dimension: int
    points: tuple[str, ...]
    metric: MetricRecipe
    map: Optional[Mapping[str, tuple[str, ...]]] = None

    def space(self) -> FinitePcmSpace:
        return build_space(self.points, self.dimension, self.metric)

    def tmap(self, space: Optional[FinitePcmSpace] = None) -> MultiValuedMap:
        if self.map is None:
            raise DocumentError("document has no map")
        return MultiValuedMap.on(space or self.space(), self.map)


class _Cursor:
    def __init__(self, text: str, line: int, col: int):
        self.text, self.line, self.pos, self.base = text, line, 0, col

    def error(self, message: str) -> DocumentError:
        return DocumentError(message, self.line, self.base + self.pos)

    def ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos] in " \t":
            self.pos += 1

    def at_end(self) -> bool:
        self.ws()
        return self.pos >= len(self.text)

    def peek(self, literal: str) -> bool:
        self.ws()
        return self.text.startswith(literal, self.pos)

    def expect(self, literal: str) -> None:
        if not self.peek(literal):
            raise self.error(f"expected {literal!r}")
        self.pos += len(literal)

    def end(self) -> None:
        if not self.at_end():
            raise self.error(f"unexpected text {self.text[self.pos:]!r}")

    def _match(self, pattern: re.Pattern) -> Optional[str]:
        self.ws()
        m = pattern.match(self.text, self.pos)
        return m.group() if m else None

    def label(self) -> str:
        token = self._match(_LABEL)
        if token is None:
            raise self.error("expected a point label")
        self.pos += len(token)
        return token

    def rational(self):
        floatish = self._match(_FLOATISH)
        token = self._match(_RATIONAL)
        if floatish and (token is None or len(floatish) > len(token)):
            raise self.error(f"floating-point literal {floatish!r} not allowed")
        if token is None:
            raise self.error("expected a rational literal")
        follow = self.text[self.pos + len(token) : self.pos + len(token) + 1]
        if follow and (follow.isalnum() or follow in "./_"):
            raise self.error("malformed rational literal")
        try:
            value = rat_parse(token)
        except ValueError as exc:
            raise self.error(str(exc)) from None
        self.pos += len(token)
        return value

    def vector(self) -> ConeVector:
        self.expect("(")
        coords = [self.rational()]
        while self.peek(","):
            self.expect(",")
            coords.append(self.rational())
        self.expect(")")
        return ConeVector(coords)

    def label_set(self) -> tuple[str, ...]:
        self.expect("{")
        items = []
        if not self.peek("}"):
            items.append(self.label())
            while self.peek(","):
                self.expect(",")
                items.append(self.label())
        self.expect("}")
        return tuple(items)


def _strip_comment(line: str) -> str:
    i = line.find("#")
    return line if i < 0 else line[:i]


def _split(text: str):
    """Yield ``(key, cursor_on_value, block_lines)`` per top-level key."""
    current = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw).rstrip()
        if not line.strip():
            continue
        if line[0] in " \t":
            if current is None:
                raise DocumentError("indented line outside a block", lineno, 1)
            indent = len(line) - len(line.lstrip())
            current[2].append(_Cursor(line[indent:], lineno, indent + 1))
            continue
        key, sep, rest = line.partition(":")
        if not sep or key not in _KEYS:
            raise DocumentError(f"expected one of {', '.join(_KEYS)} followed by ':'", lineno, 1)
        if current is not None:
            yield current
        current = (key, _Cursor(rest, lineno, len(key) + 2), [])
    if current is not None:
        yield current


def _pair_block(lines, dimension, known) -> dict:
    table = {}
    for cur in lines:
        x = cur.label()
        cur.expect(",")
        y = cur.label()
        cur.expect("->")
        start = cur.pos
        v = cur.vector()
        cur.end()
        for pt in (x, y):
            if pt not in known:
                raise DocumentError(f"unknown point {pt!r}", cur.line, cur.base)
        if len(v) != dimension:
            cur.pos = start
            raise cur.error(f"vector has {len(v)} coordinates, dimension is {dimension}")
        for key in ((x, y), (y, x)):
            if key in table and table[key] != v:
                raise cur.error(f"conflicting entries for ({x}, {y})")
            table[key] = v
    return table


def parse_document(text: str) -> SpaceDocument:
    sections = {}
    for key, cur, block in _split(text):
        if key in sections:
            raise DocumentError(f"duplicate key {key!r}", cur.line, 1)
        if key in _BLOCK_KEYS and not cur.at_end():
            raise cur.error(f"{key!r} takes its entries on indented lines")
        if key not in _BLOCK_KEYS and key != "metric" and block:
            raise DocumentError(f"{key!r} does not take indented entries", block[0].line, 1)
        sections[key] = (cur, block)

    for required in ("dimension", "points", "metric"):
        if required not in sections:
            raise DocumentError(f"missing {required!r}")

    cur, _ = sections["dimension"]
    dim_q = cur.rational()
    cur.end()
    if dim_q.denominator != 1 or dim_q < 1:
        raise DocumentError("dimension must be a positive integer", cur.line, cur.base)
    dimension = int(dim_q)

    cur, _ = sections["points"]
    points = []
    if not cur.at_end():
        points.append(cur.label())
        while cur.peek(","):
            cur.expect(",")
            points.append(cur.label())
    cur.end()
    if not points:
        raise DocumentError("points list is empty", cur.line, cur.base)
    if len(set(points)) != len(points):
        raise DocumentError("duplicate point labels", cur.line, cur.base)
    known = set(points)

    cur, block = sections["metric"]
    kind = cur.label()
    lift_blocks = [k for k in ("d-table", "w") if k in sections]
    if kind != "table" and block:
        raise DocumentError(f"{kind!r} does not take indented entries", block[0].line, 1)
    if kind != "weighted-lift" and lift_blocks:
        raise DocumentError(f"{lift_blocks[0]!r} is only valid with weighted-lift", sections[lift_blocks[0]][0].line, 1)
    if kind == "table":
        cur.end()
        table = _pair_block(block, dimension, known)
        for x in points:
            if (x, x) not in table:
                raise DocumentError(f"missing diagonal entry ({x}, {x})", cur.line, 1)
        recipe = MetricRecipe.from_table(table)
    elif kind in ("absdiff-scaledmax", "max-alpha"):
        params = [cur.rational()]
        if kind == "absdiff-scaledmax":
            params.append(cur.rational())
        cur.end()
        try:
            recipe = MetricRecipe(kind, tuple(params))
        except ValueError as exc:
            raise DocumentError(str(exc), cur.line, 1) from None
    elif kind == "weighted-lift":
        cur.end()
        if len(lift_blocks) != 2:
            raise DocumentError("weighted-lift needs 'd-table:' and 'w:' blocks", cur.line, 1)
        d_table = _pair_block(sections["d-table"][1], dimension, known)
        weights = {}
        for wc in sections["w"][1]:
            x = wc.label()
            wc.expect("->")
            v = wc.vector()
            wc.end()
            if x not in known:
                raise DocumentError(f"unknown point {x!r}", wc.line, wc.base)
            if len(v) != dimension:
                raise wc.error(f"vector has {len(v)} coordinates, dimension is {dimension}")
            if x in weights:
                raise wc.error(f"duplicate weight for {x!r}")
            weights[x] = v
        recipe = MetricRecipe.weighted_lift(d_table, weights)
    else:
        raise DocumentError(f"unknown metric kind {kind!r}", cur.line, cur.base)

    tmap = None
    if "map" in sections:
        order = {x: i for i, x in enumerate(points)}
        tmap = {}
        for mc in sections["map"][1]:
            x = mc.label()
            mc.expect("->")
            image = mc.label_set()
            mc.end()
            for pt in (x, *image):
                if pt not in known:
                    raise DocumentError(f"unknown point {pt!r}", mc.line, mc.base)
            if not image:
                raise DocumentError(f"empty image for {x!r}", mc.line, mc.base)
            if x in tmap:
                raise DocumentError(f"duplicate image for {x!r}", mc.line, mc.base)
            tmap[x] = tuple(sorted(set(image), key=order.__getitem__))
        missing = [x for x in points if x not in tmap]
        if missing:
            raise DocumentError(f"map has no image for {', '.join(missing)}", sections["map"][0].line, 1)

    doc = SpaceDocument(dimension, tuple(points), recipe, tmap)
    try:
        doc.space()
    except ValueError as exc:
        raise DocumentError(str(exc)) from None
    return doc


def _vec(v: ConeVector) -> str:
    return "(" + ", ".join(fmt_rat(c) for c in v) + ")"


def serialize_document(doc: SpaceDocument) -> str:
    out = [f"dimension: {doc.dimension}", "points: " + ", ".join(doc.points)]
    pairs = list(itertools.combinations_with_replacement(doc.points, 2))
    m = doc.metric
    if m.kind == "table":
        out.append("metric: table")
        out += [f"  {x}, {y} -> {_vec(m.table[x, y])}" for x, y in pairs]
    elif m.kind == "weighted-lift":
        out.append("metric: weighted-lift")
        out.append("d-table:")
        out += [f"  {x}, {y} -> {_vec(m.d_table[x, y])}" for x, y in pairs if (x, y) in m.d_table]
        out.append("w:")
        out += [f"  {x} -> {_vec(m.weights[x])}" for x in doc.points]
    else:
        out.append(f"metric: {m.kind} " + " ".join(fmt_rat(q) for q in m.params))
    if doc.map is not None:
        out.append("map:")
        out += [f"  {x} -> {{{', '.join(doc.map[x])}}}" for x in doc.points]
    return "\n".join(out) + "\n"
