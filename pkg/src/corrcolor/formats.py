"""Line-oriented text formats.

``.pg``  plane graph::

    planegraph n=4
    rot 1: 2 3 4        # clockwise neighbours
    outer: 1 2 3        # optional, a boundary walk of the outer face
    S: 1 2 3            # optional boundary set

``.ca``  correspondence assignment (``id`` = full straight, ``-`` = empty)::

    correspondence k=3
    edge 1 2: 1>2, 2>1

``.la`` lists, ``.col`` colourings (``color <v>: <c>``), label maps and
relabelings follow the same ``keyword <id>: payload`` shape.  ``#`` starts
a comment everywhere.
"""

from __future__ import annotations

import re
from pathlib import Path
from typing import Iterator, Mapping

from .correspondence import CorrespondenceAssignment, PartialInjection
from .planegraph import EmbeddingError, PlaneGraph
from .transforms import ListAssignment, Relabeling


class FormatError(ValueError):
    def __init__(self, message: str, lineno: int | None = None, line: str | None = None, source: str = ""):
        where = f"{source}:" if source else ""
        if lineno is not None:
            where += f"{lineno}: "
        detail = f" (line: {line.strip()!r})" if line is not None else ""
        super().__init__(f"{where}{message}{detail}")
        self.lineno = lineno


def _lines(text: str) -> Iterator[tuple[int, str, str]]:
    for i, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if body:
            yield i, body, raw


def _header(lines: list, keyword: str, param: str, source: str) -> int:
    if not lines:
        raise FormatError(f"empty file, expected '{keyword} {param}=...'", source=source)
    i, body, raw = lines[0]
    m = re.fullmatch(rf"{keyword}\s+{param}=(\d+)", body)
    if not m:
        raise FormatError(f"expected header '{keyword} {param}=<int>'", i, raw, source)
    return int(m.group(1))


def _ints(text: str, i: int, raw: str, source: str) -> list[int]:
    try:
        return [int(x) for x in text.split()]
    except ValueError:
        raise FormatError("expected integers", i, raw, source) from None


_ITEM = re.compile(r"(\w+)\s+(\d+)\s*:(.*)")


# -- .pg ------------------------------------------------------------------


def parse_pg(text: str, source: str = "") -> tuple[PlaneGraph, frozenset[int] | None]:
    lines = list(_lines(text))
    n = _header(lines, "planegraph", "n", source)
    rot: dict[int, list[int]] = {}
    outer = None
    s = None
    for i, body, raw in lines[1:]:
        if body.startswith("outer:"):
            outer = (i, raw, _ints(body[6:], i, raw, source))
            continue
        if body.startswith("S:"):
            s = frozenset(_ints(body[2:], i, raw, source))
            continue
        m = _ITEM.fullmatch(body)
        if not m or m.group(1) != "rot":
            raise FormatError("expected 'rot <v>: ...', 'outer: ...' or 'S: ...'", i, raw, source)
        v = int(m.group(2))
        if not 1 <= v <= n:
            raise FormatError(f"vertex {v} outside 1..{n}", i, raw, source)
        if v in rot:
            raise FormatError(f"rotation of {v} given twice", i, raw, source)
        rot[v] = _ints(m.group(3), i, raw, source)
    for v in range(1, n + 1):
        rot.setdefault(v, [])
    try:
        g = PlaneGraph(rot)
    except EmbeddingError as exc:
        raise FormatError(str(exc), source=source) from None
    if outer is not None:
        i, raw, walk = outer
        fid = g.find_face(walk)
        if fid is None:
            raise FormatError("outer walk is not a face of the embedding", i, raw, source)
        g = g.with_outer(fid)
    if s is not None and not s <= set(g.vertices):
        raise FormatError(f"S names unknown vertices {sorted(s - set(g.vertices))}", source=source)
    return g, s


def emit_pg(g: PlaneGraph, s=None) -> str:
    out = [f"planegraph n={g.n}"]
    for v in g.vertices:
        out.append(f"rot {v}: " + " ".join(map(str, g.rotation(v))))
    if g.outer_face_id is not None:
        out.append("outer: " + " ".join(map(str, g.outer_walk)))
    if s is not None:
        out.append("S: " + " ".join(map(str, sorted(s))))
    return "\n".join(out) + "\n"


# -- .ca ------------------------------------------------------------------

_EDGE = re.compile(r"edge\s+(\d+)\s+(\d+)\s*:(.*)")


def parse_ca(text: str, source: str = "") -> CorrespondenceAssignment:
    lines = list(_lines(text))
    k = _header(lines, "correspondence", "k", source)
    maps = {}
    for i, body, raw in lines[1:]:
        m = _EDGE.fullmatch(body)
        if not m:
            raise FormatError("expected 'edge <u> <v>: ...'", i, raw, source)
        u, v, payload = int(m.group(1)), int(m.group(2)), m.group(3).strip()
        if u == v:
            raise FormatError("loop edge", i, raw, source)
        try:
            if payload == "id":
                pi = PartialInjection.identity(k)
            elif payload == "-":
                pi = PartialInjection.empty(k)
            else:
                pairs = []
                for tok in payload.split(","):
                    a, sep, b = tok.strip().partition(">")
                    if not sep:
                        raise ValueError(f"bad pair {tok.strip()!r}")
                    pairs.append((int(a), int(b)))
                pi = PartialInjection.from_pairs(k, pairs)
        except ValueError as exc:
            raise FormatError(str(exc), i, raw, source) from None
        key = (min(u, v), max(u, v))
        if key in maps:
            raise FormatError(f"edge {u}-{v} given twice", i, raw, source)
        maps[key] = pi if u < v else pi.inverse()
    return CorrespondenceAssignment(k, maps)


def _pi_text(m: PartialInjection) -> str:
    if m == PartialInjection.identity(m.k):
        return "id"
    if not len(m):
        return "-"
    return ", ".join(f"{a}>{b}" for a, b in m.pairs())


def emit_ca(c: CorrespondenceAssignment) -> str:
    out = [f"correspondence k={c.k}"]
    for (u, v), m in c.items():
        out.append(f"edge {u} {v}: {_pi_text(m)}")
    return "\n".join(out) + "\n"


# -- .la ------------------------------------------------------------------


def parse_la(text: str, source: str = "") -> ListAssignment:
    lines = list(_lines(text))
    k = _header(lines, "lists", "k", source)
    lists = {}
    for i, body, raw in lines[1:]:
        m = _ITEM.fullmatch(body)
        if not m or m.group(1) != "v":
            raise FormatError("expected 'v <id>: <labels>'", i, raw, source)
        v = int(m.group(2))
        if v in lists:
            raise FormatError(f"list of {v} given twice", i, raw, source)
        lists[v] = _ints(m.group(3), i, raw, source)
        if len(lists[v]) != k or len(set(lists[v])) != k:
            raise FormatError(f"list must hold {k} distinct labels", i, raw, source)
    return ListAssignment(k, lists)


def emit_la(lists: ListAssignment) -> str:
    out = [f"lists k={lists.k}"]
    for v in sorted(lists.lists):
        out.append(f"v {v}: " + " ".join(map(str, lists[v])))
    return "\n".join(out) + "\n"


# -- .col -----------------------------------------------------------------


def parse_col(text: str, source: str = "") -> dict[int, int]:
    f = {}
    for i, body, raw in _lines(text):
        m = _ITEM.fullmatch(body)
        if not m or m.group(1) != "color":
            raise FormatError("expected 'color <v>: <c>'", i, raw, source)
        vals = _ints(m.group(3), i, raw, source)
        if len(vals) != 1:
            raise FormatError("expected a single colour", i, raw, source)
        v = int(m.group(2))
        if v in f:
            raise FormatError(f"colour of {v} given twice", i, raw, source)
        f[v] = vals[0]
    return f


def emit_col(f: Mapping[int, int]) -> str:
    return "".join(f"color {v}: {col}\n" for v, col in sorted(f.items()))


# -- label maps and relabelings ------------------------------------------------


def emit_labelmap(kind: str, pairs: Mapping[int, Mapping[int, int]]) -> str:
    """``kind=q``: per vertex ``label=colour``; ``kind=ell``: ``colour=label``."""
    out = [f"labelmap kind={kind}"]
    for v in sorted(pairs):
        out.append(f"v {v}: " + " ".join(f"{a}={b}" for a, b in sorted(pairs[v].items())))
    return "\n".join(out) + "\n"


def parse_labelmap(text: str, source: str = "") -> tuple[str, dict[int, dict[int, int]]]:
    lines = list(_lines(text))
    if not lines:
        raise FormatError("empty label map", source=source)
    i, body, raw = lines[0]
    m = re.fullmatch(r"labelmap\s+kind=(\w+)", body)
    if not m:
        raise FormatError("expected 'labelmap kind=<q|ell>'", i, raw, source)
    out: dict[int, dict[int, int]] = {}
    for i, body, raw in lines[1:]:
        mm = _ITEM.fullmatch(body)
        if not mm or mm.group(1) != "v":
            raise FormatError("expected 'v <id>: a=b ...'", i, raw, source)
        row = {}
        for tok in mm.group(3).split():
            a, sep, b = tok.partition("=")
            if not sep or not (a.isdigit() and b.isdigit()):
                raise FormatError(f"bad entry {tok!r}", i, raw, source)
            row[int(a)] = int(b)
        out[int(mm.group(2))] = row
    return m.group(1), out


def emit_relabeling(r: Relabeling) -> str:
    out = [f"relabeling k={r.k}"]
    for v in sorted(r.perms):
        out.append(f"pi {v}: " + " ".join(map(str, r.perms[v])))
    return "\n".join(out) + "\n"


def parse_relabeling(text: str, source: str = "") -> Relabeling:
    lines = list(_lines(text))
    k = _header(lines, "relabeling", "k", source)
    perms = {}
    for i, body, raw in lines[1:]:
        m = _ITEM.fullmatch(body)
        if not m or m.group(1) != "pi":
            raise FormatError("expected 'pi <v>: ...'", i, raw, source)
        perms[int(m.group(2))] = tuple(_ints(m.group(3), i, raw, source))
    try:
        return Relabeling(k, perms)
    except ValueError as exc:
        raise FormatError(str(exc), source=source) from None


def read(path: str | Path, parser):
    path = Path(path)
    return parser(path.read_text(), source=str(path))
