"""Structural predicates of a smallest non-extendable target, and the tetrad reduction.

None of the predicates is an assertion about arbitrary inputs: a
colourable instance may fail any of them.  They are diagnostics that a
smallest counterexample would have to pass.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Mapping

from .correspondence import CorrespondenceAssignment, inconsistent_triangle_walks
from .planegraph import (
    Edge,
    PlaneGraph,
    canonical,
    cut_vertices,
    has_path_at_most,
    interior_vertices,
    iter_cycles,
    shortest_cycle_in_range,
)
from .solver import Coloring, TargetInstance, Violation, conflicts, is_valid_coloring
from .transforms import Relabeling, StraightenError, apply_relabeling, straighten, transport_coloring

SHORT_CYCLE = 12
MAX_PATH = 8


@dataclass(frozen=True)
class Finding:
    item: str
    passed: bool
    message: str = ""
    witness: object = None

    def __str__(self) -> str:
        status = "pass" if self.passed else "FAIL"
        tail = f" - {self.message}" if self.message else ""
        return f"({self.item}) {status}{tail}"


def check_basic(inst: TargetInstance) -> dict[str, Finding]:
    """Evaluate items (a)-(f) independently, with witnesses for failures."""
    g, s = inst.g, inst.s
    out: dict[str, Finding] = {}

    out["a"] = (Finding("a", False, "every vertex is in S")
                if set(g.vertices) == set(s) else Finding("a", True))

    if g.n < 3:
        out["b"] = Finding("b", False, f"only {g.n} vertices")
    elif not g.is_connected():
        comps = g.components()
        out["b"] = Finding("b", False, f"{len(comps)} components", comps)
    else:
        cuts = cut_vertices(g)
        out["b"] = (Finding("b", False, f"cut vertex {cuts[0]}", cuts[0]) if cuts
                    else Finding("b", True))

    fail_c = fail_d = None
    for cyc in iter_cycles(g, 3, SHORT_CYCLE):
        if fail_c is None:
            inside = interior_vertices(g, cyc)
            if inside:
                fail_c = (cyc, sorted(inside))
        if fail_d is None:
            fail_d = _chord_triangle(g, cyc)
        if fail_c is not None and fail_d is not None:
            break
    out["c"] = (Finding("c", False, f"cycle {fail_c[0]} has interior vertices {fail_c[1]}", fail_c)
                if fail_c else Finding("c", True))
    out["d"] = (Finding("d", False, f"chords {fail_d[1]} and {fail_d[2]} of {fail_d[0]} share a triangle",
                        fail_d) if fail_d else Finding("d", True))

    low = sorted(v for v in g.vertices if g.degree(v) <= 2 and v not in s)
    out["e"] = (Finding("e", False, f"vertices of degree <= 2 outside S: {low}", low) if low
                else Finding("e", True))

    out["f"] = _outer_induced(g, s)
    return out


def _chord_triangle(g: PlaneGraph, cyc: tuple[int, ...]) -> tuple | None:
    t = len(cyc)
    on = set(cyc)
    cyc_edges = {canonical(cyc[i], cyc[(i + 1) % t]) for i in range(t)}
    chords = sorted({canonical(u, w) for u in cyc for w in g.neighbors(u)
                     if w in on and canonical(u, w) not in cyc_edges})
    for e1, e2 in combinations(chords, 2):
        common = set(e1) & set(e2)
        if len(common) == 1:
            a = (set(e1) - common).pop()
            b = (set(e2) - common).pop()
            if g.has_edge(a, b):
                return cyc, e1, e2
    return None


def _outer_induced(g: PlaneGraph, s: frozenset[int]) -> Finding:
    walk = g.outer_walk
    if len(walk) < 3 or len(set(walk)) != len(walk):
        return Finding("f", False, "outer face is not bounded by a cycle", walk)
    t = len(walk)
    cyc_edges = {canonical(walk[i], walk[(i + 1) % t]) for i in range(t)}
    chords = sorted({canonical(u, w) for u in walk for w in g.neighbors(u)
                     if w in set(walk) and canonical(u, w) not in cyc_edges})
    if chords:
        return Finding("f", False, f"outer cycle has chord {chords[0]}", chords[0])
    if set(walk) != set(s):
        return Finding("f", False, "S differs from the outer face vertex set", sorted(set(walk) ^ set(s)))
    return Finding("f", True)


@dataclass(frozen=True)
class FullnessIssue:
    kind: str
    edge: Edge | None = None
    triangle: tuple[int, int, int] | None = None

    def __str__(self) -> str:
        where = self.edge if self.edge is not None else self.triangle
        return f"{self.kind} at {where}"


def check_edge_fullness(inst: TargetInstance) -> list[FullnessIssue]:
    """Edges and triangles that a smallest counterexample could not carry."""
    g, c, s = inst.g, inst.c, inst.s
    issues = []
    for u, v in g.edges():
        if u in s and v in s:
            continue
        m = c[u, v]
        if len(m) <= 1:
            issues.append(FullnessIssue("domain-at-most-one", (u, v)))
        if not (g.neighbors(u) & g.neighbors(v)) and not m.is_full():
            issues.append(FullnessIssue("non-triangle-not-full", (u, v)))
    for tri in g.triangles():
        light = [x for x in tri if g.degree(x) == 3 and x not in s]
        if len(light) >= 2 and not all(c[a, b].is_full() for a, b in combinations(tri, 2)):
            issues.append(FullnessIssue("triangle-not-full", triangle=tri))
    return issues


@dataclass(frozen=True)
class Tetrad:
    """Path ``v1 v2 v3 v4`` of degree-3 vertices on a face, ends in triangles.

    ``x1`` and ``x4`` are the apexes of the triangles on ``v1v2`` and
    ``v3v4``; ``y1`` and ``y4`` are the remaining neighbours of the ends.
    """

    path: tuple[int, int, int, int]
    x1: int
    x4: int
    y1: int
    y4: int
    face: int
    touches_s: bool = False

    @property
    def vertices(self) -> tuple[int, ...]:
        return (*self.path, self.x1, self.x4, self.y1, self.y4)

    def reversed(self) -> Tetrad:
        return Tetrad(self.path[::-1], self.x4, self.x1, self.y4, self.y1, self.face, self.touches_s)


def tetrad_at(g: PlaneGraph, path: tuple[int, ...], face: int, s: frozenset[int] = frozenset()) -> Tetrad | None:
    """The tetrad with this path, or ``None`` if any tetrad condition fails."""
    if len(set(path)) != 4 or any(g.degree(v) != 3 for v in path):
        return None
    v1, v2, v3, v4 = path
    if not (g.has_edge(v1, v2) and g.has_edge(v2, v3) and g.has_edge(v3, v4)):
        return None
    x1s = sorted(g.neighbors(v1) & g.neighbors(v2))
    x4s = sorted(g.neighbors(v3) & g.neighbors(v4))
    if len(x1s) != 1 or len(x4s) != 1:
        return None
    x1, x4 = x1s[0], x4s[0]
    rest1 = g.neighbors(v1) - {v2, x1}
    rest4 = g.neighbors(v4) - {v3, x4}
    if len(rest1) != 1 or len(rest4) != 1:
        return None
    (y1,), (y4,) = rest1, rest4
    t = Tetrad((v1, v2, v3, v4), x1, x4, y1, y4, face)
    if len(set(t.vertices)) != 8:
        return None
    return Tetrad(t.path, x1, x4, y1, y4, face, bool(set(path) & s))


def find_tetrads(g: PlaneGraph, s=frozenset()) -> list[Tetrad]:
    """All tetrads, each oriented so that its path is the smaller of the two readings."""
    s = frozenset(s)
    found: dict[tuple[int, ...], Tetrad] = {}
    for fid, walk in enumerate(g.faces):
        t = len(walk)
        if t < 4:
            continue
        for i in range(t):
            path = tuple(walk[(i + j) % t] for j in range(4))
            path = min(path, path[::-1])
            if path in found:
                continue
            tet = tetrad_at(g, path, fid, s)
            if tet is not None:
                found[path] = tet
    return [found[p] for p in sorted(found)]


# -- reduction ------------------------------------------------------------


class ReductionError(ValueError):
    def __init__(self, attempts: list[tuple[Tetrad, list[Violation]]]):
        parts = []
        for tet, vs in attempts:
            parts.append(f"identify {tet.y1}/{tet.x4}: " + "; ".join(str(v) for v in vs))
        super().__init__(" | ".join(parts))
        self.attempts = attempts


def _incident_edges(g: PlaneGraph, verts) -> list[Edge]:
    return sorted({canonical(v, u) for v in verts for u in g.neighbors(v)})


def reduction_preconditions(inst: TargetInstance, t: Tetrad) -> list[Violation]:
    """Checks for identifying ``t.y1`` with ``t.x4`` after deleting the path."""
    g, c, s = inst.g, inst.c, inst.s
    out = []
    touching = sorted(set(t.path) & s)
    if touching:
        out.append(Violation("tetrad-touches-S", "tetrad contains vertices of S", touching))
    if t.x4 in s:
        out.append(Violation("x4-in-S", f"vertex {t.x4} to be absorbed lies in S", t.x4))
    elif t.y1 in s and g.neighbors(t.x4) & s:
        out.append(Violation("x4-has-S-neighbour", f"{t.y1} is in S and {t.x4} has neighbours in S",
                             sorted(g.neighbors(t.x4) & s)))
    if has_path_at_most(g, t.y1, t.x4, MAX_PATH, excluded=t.path):
        out.append(Violation("short-path", f"path of length <= {MAX_PATH} between {t.y1} and {t.x4}",
                             (t.y1, t.x4)))
    if t.y1 in s or t.x4 in s:
        other = t.x4 if t.y1 in s else t.y1
        bad = sorted((g.neighbors(other) & s) - set(t.path))
        if bad:
            out.append(Violation("creates-S-edge", "identification joins two vertices of S", bad))
    not_full = [e for e in _incident_edges(g, t.path) if not c[e].is_full()]
    if not_full:
        out.append(Violation("edge-not-full", "edge at the tetrad is not full", not_full))
    return out


def reduction_options(t: Tetrad) -> list[Tetrad]:
    """Both orientations; each reduction identifies ``y1`` with ``x4`` of its orientation."""
    return sorted([t, t.reversed()], key=lambda o: tuple(sorted((o.y1, o.x4))))


def _merge(g: PlaneGraph, path: tuple[int, ...], keep: int, drop: int) -> tuple[dict[int, list[int]], dict[int, int]]:
    """Rotations of ``g - path`` with ``drop`` spliced into ``keep``.

    Both ends lie on the face left by deleting ``path``; the merged
    rotation is ``keep``'s neighbours from its corner on that face,
    followed by ``drop``'s from its corner.  Returns the rotations on
    new ids and the old-to-new vertex map.
    """
    g1, m1 = g.induced(set(g.vertices) - set(path))
    a, b = m1[keep], m1[drop]
    rot = {v: list(g1.rotation(v)) for v in g1.vertices}
    if rot[a] and rot[b]:
        spot = None
        for walk in g1.faces:
            if a in walk and b in walk:
                spot = walk
                break
        if spot is None:
            if any(a in comp and b in comp for comp in g1.components()):
                raise ValueError(f"{keep} and {drop} share no face after deleting the tetrad")
            # separate components: a one-point union is planar at any corner
            spot = (a, rot[a][0], b, rot[b][0])
        t = len(spot)
        i, j = spot.index(a), spot.index(b)
        ra = rot[a][rot[a].index(spot[(i + 1) % t]):] + rot[a][:rot[a].index(spot[(i + 1) % t])]
        rb = rot[b][rot[b].index(spot[(j + 1) % t]):] + rot[b][:rot[b].index(spot[(j + 1) % t])]
        rot[a] = ra + rb
    else:
        rot[a] = rot[a] + rot[b]
    for u in rot[b]:
        rot[u] = [a if x == b else x for x in rot[u]]
    del rot[b]
    survivors = sorted(rot)
    renum = {v: i for i, v in enumerate(survivors, start=1)}
    new_rot = {renum[v]: [renum[x] for x in rot[v]] for v in survivors}
    vmap = {old: renum[m1[old]] for old in m1 if old != drop}
    vmap[drop] = renum[a]
    return new_rot, vmap


@dataclass
class Reduction:
    """Result of a tetrad reduction, with the way back."""

    original: TargetInstance
    tetrad: Tetrad
    reduced: TargetInstance
    vertex_map: dict[int, int]
    relabeling: Relabeling
    notes: list[str] = field(default_factory=list)

    def extend(self, f: Mapping[int, int]) -> Coloring:
        return extend_coloring(self.original, self.tetrad, self.vertex_map, self.relabeling, f)

    def script(self) -> dict:
        t = self.tetrad
        return {
            "tetrad": list(t.path),
            "x1": t.x1, "x4": t.x4, "y1": t.y1, "y4": t.y4, "face": t.face,
            "vertex_map": {str(k): v for k, v in sorted(self.vertex_map.items())},
            "k": self.relabeling.k,
            "relabeling": {str(v): list(p) for v, p in sorted(self.relabeling.perms.items())},
        }


def reduce_tetrad(inst: TargetInstance, t: Tetrad) -> Reduction:
    """Delete the tetrad path and identify ``y1`` with ``x4`` (or ``y4`` with ``x1``).

    Edges at the path are straightened first and the precolouring is
    carried along.  The reduced instance is re-checked: no cycle of
    length 4 to 8 and consistency on triangles.  Raises
    :class:`ReductionError` listing the failed checks of each option.
    """
    attempts = []
    for opt in reduction_options(t):
        problems = reduction_preconditions(inst, opt)
        if problems:
            attempts.append((opt, problems))
            continue
        try:
            red = _build_reduction(inst, opt)
        except StraightenError as exc:
            attempts.append((opt, [Violation("straighten", str(exc), exc.cycle)]))
            continue
        post = []
        cyc = shortest_cycle_in_range(red.reduced.g, 4, 8)
        if cyc is not None:
            post.append(Violation("creates-short-cycle", f"reduced graph has a {len(cyc)}-cycle", cyc))
        bad = inconsistent_triangle_walks(red.reduced.c)
        if bad:
            post.append(Violation("triangle-consistency", "reduced assignment inconsistent", bad[0]))
        clash = conflicts(red.reduced.c, red.reduced.f0)
        if clash:
            post.append(Violation("f0-invalid", "precolouring invalid after identification", clash))
        if post:
            attempts.append((opt, post))
            continue
        return red
    raise ReductionError(attempts)


def _build_reduction(inst: TargetInstance, t: Tetrad) -> Reduction:
    g = inst.g
    h = _incident_edges(g, t.path)
    c2, relab = straighten(inst.c, h)
    rot, vmap = _merge(g, t.path, t.y1, t.x4)
    g2 = _with_outer_from(rot, g, vmap, t.path)
    maps = {}
    for u, v in g.edges():
        if u in t.path or v in t.path:
            continue
        maps[(vmap[u], vmap[v])] = c2[u, v]
    c_red = CorrespondenceAssignment(inst.k, maps)
    f0 = transport_coloring(inst.f0, relab)
    red = TargetInstance(g2, c_red, frozenset(vmap[v] for v in inst.s), {vmap[v]: col for v, col in f0.items()})
    return Reduction(inst, t, red, vmap, relab)


def _with_outer_from(rot, g: PlaneGraph, vmap: Mapping[int, int], removed) -> PlaneGraph:
    g2 = PlaneGraph(rot)
    walk = g.outer_walk
    for i, a in enumerate(walk):
        b = walk[(i + 1) % len(walk)]
        if a in removed or b in removed:
            continue
        dart = (vmap[a], vmap[b])
        if g2.has_edge(*dart):
            return g2.with_outer(g2.face_of_dart(*dart))
    return g2


class ExtensionError(RuntimeError):
    pass


def extend_coloring(
    original: TargetInstance,
    t: Tetrad,
    vertex_map: Mapping[int, int],
    relabeling: Relabeling,
    f_reduced: Mapping[int, int],
) -> Coloring:
    """Lift a colouring of the reduced instance to the original one.

    Works in the straightened colours: copy colours through the vertex
    map, colour ``v4`` then ``v3`` with the least colour free of conflicts,
    then pick ``v1``, ``v2`` jointly; finally undo the renaming.
    """
    c2 = apply_relabeling(original.c, relabeling)
    k = original.k
    v1, v2, v3, v4 = t.path
    f = {v: f_reduced[vertex_map[v]] for v in original.g.vertices if v not in t.path}

    def ok_at(v: int) -> bool:
        return all(c2[v, u](f[v]) != f[u] for u in original.g.neighbors(v) if u in f)

    for v in (v4, v3):
        for col in range(1, k + 1):
            f[v] = col
            if ok_at(v):
                break
        else:
            raise ExtensionError(f"no colour left for {v}")
    for a, b in product(range(1, k + 1), repeat=2):
        f[v1], f[v2] = a, b
        if ok_at(v1) and ok_at(v2):
            break
    else:
        raise ExtensionError(f"no colours left for {v1}, {v2}")
    lifted = {v: relabeling.inverse_at(v, col) for v, col in sorted(f.items())}
    if not is_valid_coloring(original.c, lifted):
        raise ExtensionError("lifted colouring is not valid")
    if any(lifted[v] != col for v, col in original.f0.items()):
        raise ExtensionError("lifted colouring does not extend f0")
    return lifted


def minimality_failures(inst: TargetInstance) -> list[str]:
    """Names of the predicates a smallest counterexample would pass but ``inst`` fails."""
    out = [f"basic-{k}" for k, fnd in check_basic(inst).items() if not fnd.passed]
    out += sorted({f"fullness-{i.kind}" for i in check_edge_fullness(inst)})
    if any(not t.touches_s for t in find_tetrads(inst.g, inst.s)):
        out.append("tetrad-disjoint-from-S")
    return out
