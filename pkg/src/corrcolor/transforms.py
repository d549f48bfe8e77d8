"""Colour renamings, straightening, saturation and the list-colouring bridge."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .correspondence import (
    CorrespondenceAssignment,
    PartialInjection,
    cover_classes,
    inconsistency_witness,
    walk_map,
)
from .planegraph import Edge, PlaneGraph, canonical, edge_blocks

Coloring = dict[int, int]


@dataclass(frozen=True)
class Relabeling:
    """Per-vertex permutations of ``1..k``; ``perms[v][c - 1]`` is ``pi_v(c)``.

    Vertices missing from ``perms`` are fixed.  Identity entries are
    dropped on construction so equal renamings compare equal.
    """

    k: int
    perms: Mapping[int, tuple[int, ...]] = field(default_factory=dict)

    def __post_init__(self) -> None:
        clean = {}
        ident = tuple(range(1, self.k + 1))
        for v, p in self.perms.items():
            p = tuple(p)
            if sorted(p) != list(ident):
                raise ValueError(f"pi_{v} = {p} is not a permutation of 1..{self.k}")
            if p != ident:
                clean[v] = p
        object.__setattr__(self, "perms", clean)

    def __call__(self, v: int, c: int) -> int:
        p = self.perms.get(v)
        return p[c - 1] if p else c

    def inverse_at(self, v: int, c: int) -> int:
        p = self.perms.get(v)
        return p.index(c) + 1 if p else c

    def inverse(self) -> Relabeling:
        inv = {}
        for v, p in self.perms.items():
            q = [0] * self.k
            for c, d in enumerate(p, start=1):
                q[d - 1] = c
            inv[v] = tuple(q)
        return Relabeling(self.k, inv)

    def is_fixed(self, v: int) -> bool:
        return v not in self.perms

    @property
    def moved(self) -> frozenset[int]:
        return frozenset(self.perms)


def apply_relabeling(c: CorrespondenceAssignment, r: Relabeling) -> CorrespondenceAssignment:
    """The equivalent assignment ``C'`` with ``C'_uv = pi_u^-1 . C_uv . pi_v``.

    In pairs: each ``a -> b`` on ``uv`` becomes ``pi_u(a) -> pi_v(b)``.
    """
    if r.k != c.k:
        raise ValueError(f"relabeling on {r.k} colours, assignment on {c.k}")
    maps = {}
    for (u, v), m in c.items():
        if u in r.perms or v in r.perms:
            m = PartialInjection.from_pairs(c.k, [(r(u, a), r(v, b)) for a, b in m.pairs()])
        maps[(u, v)] = m
    return CorrespondenceAssignment(c.k, maps)


def transport_coloring(f: Mapping[int, int], r: Relabeling) -> Coloring:
    return {v: r(v, col) for v, col in f.items()}


class StraightenError(ValueError):
    """A cycle of the subgraph is not full or not consistent."""

    def __init__(self, message: str, cycle: tuple[int, ...], reason: str):
        super().__init__(message)
        self.cycle = cycle
        self.reason = reason


def _tree_path(parent: Mapping[int, int | None], a: int, b: int) -> list[int]:
    """Path from ``a`` to ``b`` in a rooted tree given by parent pointers."""
    up_a = [a]
    while parent[up_a[-1]] is not None:
        up_a.append(parent[up_a[-1]])
    up_b = [b]
    while parent[up_b[-1]] is not None:
        up_b.append(parent[up_b[-1]])
    anc_b = set(up_b)
    i = next(i for i, x in enumerate(up_a) if x in anc_b)
    meet = up_a[i]
    return up_a[: i + 1] + up_b[: up_b.index(meet)][::-1]


def _cycle_through(edges: Sequence[Edge], u: int, v: int) -> tuple[int, ...]:
    """A cycle containing ``uv`` inside a 2-connected edge set (BFS path plus the edge)."""
    adj: dict[int, list[int]] = {}
    for a, b in edges:
        if {a, b} == {u, v}:
            continue
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
    prev = {u: None}
    queue = deque([u])
    while queue:
        x = queue.popleft()
        for y in sorted(adj.get(x, ())):
            if y not in prev:
                prev[y] = x
                queue.append(y)
    path = [v]
    while prev[path[-1]] is not None:
        path.append(prev[path[-1]])
    return tuple(path[::-1])


def straighten(c: CorrespondenceAssignment, h: Iterable[Edge]) -> tuple[CorrespondenceAssignment, Relabeling]:
    """Rename colours so every edge of ``h`` is straight.

    Blocks are processed so that each meets the earlier ones in at most
    one vertex ``r``; inside a block a BFS spanning tree from ``r`` is
    straightened one vertex at a time.  Only vertices of ``h`` are
    renamed, and ``r`` keeps its colours.  Cycles of ``h`` must be full and
    consistent; otherwise :class:`StraightenError` names the cycle.
    """
    h_edges = sorted({canonical(*e) for e in h})
    for e in h_edges:
        if e not in c:
            raise KeyError(f"{e[0]}-{e[1]} carries no correspondence")
    k = c.k
    maps = {e: c[e] for e in h_edges}
    perms: dict[int, tuple[int, ...]] = {}
    done: set[int] = set()

    h_adj: dict[int, list[int]] = {}
    for a, b in h_edges:
        h_adj.setdefault(a, []).append(b)
        h_adj.setdefault(b, []).append(a)

    def get(a: int, b: int) -> PartialInjection:
        m = maps[canonical(a, b)]
        return m if a < b else m.inverse()

    for block in edge_blocks(h_edges):
        if len(block) > 1:
            for a, b in block:
                if not maps[(a, b)].is_full():
                    cyc = _cycle_through(block, a, b)
                    raise StraightenError(
                        f"edge {a}-{b} on cycle {cyc} is not full", cyc, "not full"
                    )
        verts = sorted({x for e in block for x in e})
        shared = [x for x in verts if x in done]
        root = shared[0] if shared else verts[0]
        adj: dict[int, list[int]] = {}
        for a, b in block:
            adj.setdefault(a, []).append(b)
            adj.setdefault(b, []).append(a)
        parent: dict[int, int | None] = {root: None}
        order = [root]
        queue = deque([root])
        while queue:
            x = queue.popleft()
            for y in sorted(adj[x]):
                if y not in parent:
                    parent[y] = x
                    order.append(y)
                    queue.append(y)
        for v in order[1:]:
            m = get(parent[v], v)
            # pi_v sends m(d) back to d; unmatched colours pair up in increasing order
            pi = [0] * k
            for d, img in m.pairs():
                pi[img - 1] = d
            spare_src = [col for col in range(1, k + 1) if col not in m.image]
            spare_dst = [col for col in range(1, k + 1) if col not in m.domain]
            for a, b in zip(spare_src, spare_dst):
                pi[a - 1] = b
            perms[v] = tuple(pi)
            # rewrite every edge of h at v, later blocks included
            for w in h_adj[v]:
                e = canonical(v, w)
                old = maps[e]
                if v == e[0]:
                    maps[e] = PartialInjection.from_pairs(k, [(pi[a - 1], b) for a, b in old.pairs()])
                else:
                    maps[e] = PartialInjection.from_pairs(k, [(a, pi[b - 1]) for a, b in old.pairs()])
        for a, b in block:
            if parent.get(b) == a or parent.get(a) == b:
                continue
            if not maps[(a, b)].is_straight():
                cyc = tuple(_tree_path(parent, a, b))
                raise StraightenError(f"cycle {cyc} is not consistent", cyc, "inconsistent")
        done.update(verts)

    r = Relabeling(k, perms)
    return apply_relabeling(c, r), r


def saturate(c: CorrespondenceAssignment, g: PlaneGraph, s: Iterable[int] = ()) -> CorrespondenceAssignment:
    """Fill every edge that lies in no triangle and does not join two vertices of ``s``.

    Pairs ``c1 -> c2`` are added with ``c1`` the smallest colour outside
    the domain and ``c2`` the smallest outside the image.  Adding pairs only
    removes colourings.
    """
    s = set(s)
    maps = dict(c.items())
    for u, v in g.edges():
        if (u in s and v in s) or g.neighbors(u) & g.neighbors(v):
            continue
        m = maps[(u, v)]
        pairs = m.pairs()
        free_src = [col for col in range(1, c.k + 1) if col not in m.domain]
        free_dst = [col for col in range(1, c.k + 1) if col not in m.image]
        pairs.extend(zip(free_src, free_dst))
        maps[(u, v)] = PartialInjection.from_pairs(c.k, pairs)
    return CorrespondenceAssignment(c.k, maps)


@dataclass(frozen=True)
class ListAssignment:
    """Lists of ``k`` distinct integer labels per vertex."""

    k: int
    lists: Mapping[int, tuple[int, ...]]

    def __post_init__(self) -> None:
        clean = {}
        for v, lst in self.lists.items():
            lst = tuple(lst)
            if len(lst) != self.k:
                raise ValueError(f"list of vertex {v} has {len(lst)} entries, expected {self.k}")
            if len(set(lst)) != len(lst):
                raise ValueError(f"list of vertex {v} repeats a label")
            clean[v] = lst
        object.__setattr__(self, "lists", clean)

    def __getitem__(self, v: int) -> tuple[int, ...]:
        return self.lists[v]


def is_list_coloring(g: PlaneGraph, lists: ListAssignment, phi: Mapping[int, int]) -> bool:
    if any(phi[v] not in lists[v] for v in g.vertices):
        return False
    return all(phi[u] != phi[v] for u, v in g.edges())


def from_lists(g: PlaneGraph, lists: ListAssignment) -> tuple[CorrespondenceAssignment, dict[int, dict[int, int]]]:
    """Correspondence assignment equivalent to list colouring with ``lists``.

    Returns the assignment and ``q`` with ``q[v][label]`` the colour that
    stands for ``label`` at ``v`` (labels numbered in sorted order).  A
    colouring ``f`` is valid iff ``v -> label with q[v][label] == f(v)`` is
    an L-colouring.
    """
    missing = [v for v in g.vertices if v not in lists.lists]
    if missing:
        raise ValueError(f"no list for vertices {missing}")
    q = {v: {lab: i for i, lab in enumerate(sorted(lists[v]), start=1)} for v in g.vertices}
    maps = {}
    for u, v in g.edges():
        common = set(lists[u]) & set(lists[v])
        maps[(u, v)] = PartialInjection.from_pairs(lists.k, [(q[u][lab], q[v][lab]) for lab in common])
    return CorrespondenceAssignment(lists.k, maps), q


def to_lists(g: PlaneGraph, c: CorrespondenceAssignment) -> tuple[ListAssignment, dict[tuple[int, int], int]]:
    """Lists whose colourings match the colourings of a consistent assignment.

    ``ell[(v, col)]`` numbers the class of ``(v, col)`` in the cover
    structure, classes numbered by first appearance in ``(v, col)`` order;
    ``L(v)`` lists ``ell[(v, 1)], ..., ell[(v, k)]``.
    """
    bad = inconsistency_witness(c)
    if bad is not None:
        v, c1, c2 = bad
        raise ValueError(f"assignment is not consistent: ({v},{c1}) and ({v},{c2}) are linked")
    ds = cover_classes(c, g.vertices)
    number: dict = {}
    ell = {}
    for v in g.vertices:
        for col in range(1, c.k + 1):
            root = ds.find((v, col))
            if root not in number:
                number[root] = len(number) + 1
            ell[(v, col)] = number[root]
    lists = {v: tuple(ell[(v, col)] for col in range(1, c.k + 1)) for v in g.vertices}
    return ListAssignment(c.k, lists), ell


def cycle_composite(c: CorrespondenceAssignment, cycle: Sequence[int]) -> PartialInjection:
    return walk_map(c, [*cycle, cycle[0]])
