"""Charge bookkeeping on plane graphs with a boundary set.

Vertices start with ``2 deg(v) - 6``, faces with ``|f| - 6``; on a
connected plane graph the total is -12.  Four local rules move charge
and every move is logged, so the final ledger can be replayed from the
initial one.  All amounts are exact ``Fraction`` values.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .planegraph import PlaneGraph

HALF = Fraction(1, 2)

Element = tuple[str, int]  # ("v", vertex id) or ("f", face id)


@dataclass(frozen=True)
class Transfer:
    rule: str
    source: Element
    sink: Element
    amount: Fraction


def element_name(e: Element) -> str:
    return f"{e[0]}{e[1]}"


def parse_element(text: str) -> Element:
    kind, num = text[0], int(text[1:])
    if kind not in "vf":
        raise ValueError(f"bad element {text!r}")
    return kind, num


@dataclass
class ChargeLedger:
    vertex: dict[int, Fraction]
    face: dict[int, Fraction]
    stage: str = "initial"
    transfers: list[Transfer] = field(default_factory=list)

    def total(self) -> Fraction:
        return sum(self.vertex.values(), Fraction(0)) + sum(self.face.values(), Fraction(0))

    def charge(self, e: Element) -> Fraction:
        return self.vertex[e[1]] if e[0] == "v" else self.face[e[1]]

    def _move(self, t: Transfer) -> None:
        for (kind, idx), sign in ((t.source, -1), (t.sink, 1)):
            book = self.vertex if kind == "v" else self.face
            book[idx] += sign * t.amount
        self.transfers.append(t)

    def copy(self) -> ChargeLedger:
        return ChargeLedger(dict(self.vertex), dict(self.face), self.stage, list(self.transfers))


def initial_charges(g: PlaneGraph) -> ChargeLedger:
    if g.num_edges == 0 or not g.is_connected():
        raise ValueError("charges need a connected graph with at least one edge")
    return ChargeLedger(
        {v: Fraction(2 * g.degree(v) - 6) for v in g.vertices},
        {f: Fraction(len(w) - 6) for f, w in enumerate(g.faces)},
    )


def _in_triangle(g: PlaneGraph, v: int) -> bool:
    nb = g.neighbors(v)
    return any(g.neighbors(u) & nb for u in nb)


def r3_receivers(g: PlaneGraph, v: int) -> list[int]:
    """Faces that ``v`` pays under R3, each listed once.

    Every window ``v1 v2 v3 v4`` of four rotation-consecutive neighbours,
    read in both directions, with ``v1v2`` an edge and ``v3v4`` not,
    names the face at the corner between ``v2`` and ``v3``.
    """
    r = g.rotation(v)
    d = len(r)
    if d < 4:
        return []
    out: list[int] = []
    for seq in (r, r[::-1]):
        for i in range(d):
            w1, w2, w3, w4 = (seq[(i + j) % d] for j in range(4))
            if g.has_edge(w1, w2) and not g.has_edge(w3, w4):
                f = g.face_of_corner(v, w2, w3)
                if f not in out:
                    out.append(f)
    return out


def apply_rules(g: PlaneGraph, s: Iterable[int], ledger: ChargeLedger, outer_r2: bool = False) -> ChargeLedger:
    """Run R1-R4 once on a copy of an initial ledger.

    R1: a vertex on a non-outer triangular face pays it 1.
    R2: a non-outer face of length >= 9 pays 1/2 to each of its vertices
    outside ``s`` of degree 3 lying in a triangle.
    R3: a vertex of degree >= 4 pays 1/2 per face found by
    :func:`r3_receivers`, the outer face included.
    R4: a vertex of ``s`` of degree 2 receives 1/2 from its non-outer face,
    provided exactly one such face exists.

    ``outer_r2`` lets the outer face pay under R2 as well.
    """
    if ledger.stage != "initial":
        raise ValueError("rules apply to an initial ledger")
    s = set(s)
    out = ledger.copy()
    outer = g.outer_face_id
    for f, walk in enumerate(g.faces):
        if f != outer and len(walk) == 3:
            for x in walk:
                out._move(Transfer("R1", ("v", x), ("f", f), Fraction(1)))
    for f, walk in enumerate(g.faces):
        if len(walk) < 9 or (f == outer and not outer_r2):
            continue
        for x in dict.fromkeys(walk):
            if x not in s and g.degree(x) == 3 and _in_triangle(g, x):
                out._move(Transfer("R2", ("f", f), ("v", x), HALF))
    for v in g.vertices:
        for f in r3_receivers(g, v):
            out._move(Transfer("R3", ("v", v), ("f", f), HALF))
    for v in sorted(s):
        if g.degree(v) != 2:
            continue
        inner = [f for f in g.faces_at(v) if f != outer]
        if len(inner) == 1:
            out._move(Transfer("R4", ("f", inner[0]), ("v", v), HALF))
    out.stage = "final"
    return out


def replay(initial: ChargeLedger, transfers: Iterable[Transfer]) -> ChargeLedger:
    out = ChargeLedger(dict(initial.vertex), dict(initial.face), "final")
    for t in transfers:
        out._move(t)
    return out


def vertex_bound(g: PlaneGraph, s, v: int) -> Fraction | None:
    """Lower bound (dagger) for the final charge of ``v``; ``None`` if no tier covers it."""
    if v not in s or g.degree(v) >= 4:
        return Fraction(0)
    if g.degree(v) == 3:
        return Fraction(-1)
    if g.degree(v) == 2:
        return Fraction(-3, 2)
    return None


@dataclass
class AuditReport:
    vertex_violations: list[tuple[int, Fraction, Fraction | None]] = field(default_factory=list)
    face_violations: list[tuple[int, Fraction]] = field(default_factory=list)
    spend_violations: list[tuple[int, Fraction, Fraction]] = field(default_factory=list)
    total: Fraction = Fraction(0)
    outer_charge: Fraction | None = None
    r2_outer_sensitive: bool = False
    lines: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not (self.vertex_violations or self.face_violations)

    def render(self) -> str:
        return "\n".join(self.lines)


def audit(g: PlaneGraph, s, final: ChargeLedger) -> AuditReport:
    """Check (dagger) per vertex and non-negativity per non-outer face.

    Spending under R1 and R3 is compared against ``3/4 deg(v)``; excess is
    recorded separately and does not by itself fail the audit.
    """
    if final.stage != "final":
        raise ValueError("audit needs a final ledger")
    s = set(s)
    rep = AuditReport(total=final.total())
    outer = g.outer_face_id
    spent: dict[int, Fraction] = {}
    for t in final.transfers:
        if t.rule in ("R1", "R3"):
            spent[t.source[1]] = spent.get(t.source[1], Fraction(0)) + t.amount
    for v in g.vertices:
        ch = final.vertex[v]
        bound = vertex_bound(g, s, v)
        ok = bound is not None and ch >= bound
        if not ok:
            rep.vertex_violations.append((v, ch, bound))
        rep.lines.append(f"v{v}\tdeg={g.degree(v)}\t{'S' if v in s else '-'}\t{ch}\t"
                         f"bound={bound if bound is not None else 'none'}\t{'ok' if ok else 'VIOLATION'}")
        cap = Fraction(3, 4) * g.degree(v)
        if spent.get(v, 0) > cap:
            rep.spend_violations.append((v, spent[v], cap))
    for f in range(len(g.faces)):
        ch = final.face[f]
        if f == outer:
            rep.outer_charge = ch
            rep.lines.append(f"f{f}\tlen={len(g.faces[f])}\touter\t{ch}")
            continue
        ok = ch >= 0
        if not ok:
            rep.face_violations.append((f, ch))
        rep.lines.append(f"f{f}\tlen={len(g.faces[f])}\t-\t{ch}\t{'ok' if ok else 'VIOLATION'}")
    rep.lines.append(f"total\t{rep.total}")
    for v, amount, cap in rep.spend_violations:
        rep.lines.append(f"spend v{v}\t{amount} > {cap}")
    return rep


def audit_graph(g: PlaneGraph, s=()) -> tuple[ChargeLedger, ChargeLedger, AuditReport]:
    """Initial ledger, final ledger and audit; flags sensitivity to R2 on the outer face."""
    s = set(s)
    init = initial_charges(g)
    final = apply_rules(g, s, init)
    rep = audit(g, s, final)
    alt = audit(g, s, apply_rules(g, s, init, outer_r2=True))
    rep.r2_outer_sensitive = alt.ok != rep.ok
    if rep.r2_outer_sensitive:
        rep.lines.append("note\tverdict changes if the outer face pays under R2")
    return init, final, rep


def transfers_tsv(ledger: ChargeLedger) -> str:
    rows = ["rule\tsource\tsink\tamount"]
    for t in ledger.transfers:
        rows.append(f"{t.rule}\t{element_name(t.source)}\t{element_name(t.sink)}\t"
                    f"{t.amount.numerator}/{t.amount.denominator}")
    return "\n".join(rows) + "\n"


def parse_transfers_tsv(text: str) -> list[Transfer]:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0].split("\t") != ["rule", "source", "sink", "amount"]:
        raise ValueError("missing transfer log header")
    out = []
    for ln in lines[1:]:
        rule, src, sink, amount = ln.split("\t")
        out.append(Transfer(rule, parse_element(src), parse_element(sink), Fraction(amount)))
    return out
