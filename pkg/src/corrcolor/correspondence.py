"""Partial injections on colours, correspondence assignments and walks.

Colours are ``1..k``.  Composition is written left to right:
``compose(a, b)`` applies ``a`` first, so the map along a walk
``v1 v2 ... vt`` is ``compose(C[v1,v2], C[v2,v3], ...)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence

from .planegraph import Edge, PlaneGraph, canonical

Walk = Sequence[int]


@dataclass(frozen=True)
class PartialInjection:
    """Injective partial map ``[k] -> [k]``.

    ``table[c - 1]`` is the image of colour ``c`` or ``0`` when ``c`` is
    outside the domain.
    """

    k: int
    table: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.table) != self.k:
            raise ValueError(f"table has {len(self.table)} entries, expected k={self.k}")
        seen = set()
        for c, d in enumerate(self.table, start=1):
            if not 0 <= d <= self.k:
                raise ValueError(f"image {d} of colour {c} outside 1..{self.k}")
            if d:
                if d in seen:
                    raise ValueError(f"not injective: colour {d} hit twice")
                seen.add(d)

    @classmethod
    def from_pairs(cls, k: int, pairs: Iterable[tuple[int, int]]) -> PartialInjection:
        table = [0] * k
        for a, b in pairs:
            if not 1 <= a <= k:
                raise ValueError(f"colour {a} outside 1..{k}")
            if table[a - 1]:
                raise ValueError(f"colour {a} mapped twice")
            table[a - 1] = b
        return cls(k, tuple(table))

    @classmethod
    def identity(cls, k: int) -> PartialInjection:
        return cls(k, tuple(range(1, k + 1)))

    @classmethod
    def empty(cls, k: int) -> PartialInjection:
        return cls(k, (0,) * k)

    def __call__(self, c: int) -> int | None:
        return self.table[c - 1] or None

    def __len__(self) -> int:
        return sum(1 for d in self.table if d)

    @property
    def domain(self) -> frozenset[int]:
        return frozenset(c for c, d in enumerate(self.table, start=1) if d)

    @property
    def image(self) -> frozenset[int]:
        return frozenset(d for d in self.table if d)

    def pairs(self) -> list[tuple[int, int]]:
        return [(c, d) for c, d in enumerate(self.table, start=1) if d]

    def inverse(self) -> PartialInjection:
        table = [0] * self.k
        for c, d in self.pairs():
            table[d - 1] = c
        return PartialInjection(self.k, tuple(table))

    def is_straight(self) -> bool:
        return all(c == d for c, d in self.pairs())

    def is_full(self) -> bool:
        return all(self.table)

    def with_pair(self, a: int, b: int) -> PartialInjection:
        if self.table[a - 1]:
            raise ValueError(f"colour {a} already in the domain")
        return PartialInjection.from_pairs(self.k, [*self.pairs(), (a, b)])

    def __str__(self) -> str:
        return "{" + ", ".join(f"{c}->{d}" for c, d in self.pairs()) + "}"


def compose(a: PartialInjection, *rest: PartialInjection) -> PartialInjection:
    """``c -> ...b(a(c))``, defined where every step is defined."""
    out = list(a.table)
    for b in rest:
        if b.k != a.k:
            raise ValueError(f"cannot compose maps on {a.k} and {b.k} colours")
        out = [b.table[d - 1] if d else 0 for d in out]
    return PartialInjection(a.k, tuple(out))


class CorrespondenceAssignment:
    """One partial injection per edge, stored in the direction ``u < v``.

    The reverse direction is always derived as the inverse, never stored.
    Instances are treated as immutable; the ``with_*`` methods return
    modified copies.
    """

    __slots__ = ("k", "_maps", "_adj")

    def __init__(self, k: int, maps: Mapping[Edge, PartialInjection] | Iterable[tuple[Edge, PartialInjection]] = ()):
        if k < 1:
            raise ValueError("k must be positive")
        self.k = k
        items = maps.items() if isinstance(maps, Mapping) else maps
        store: dict[Edge, PartialInjection] = {}
        for (u, v), m in items:
            if u == v:
                raise ValueError(f"loop at {u}")
            if m.k != k:
                raise ValueError(f"edge {u}-{v} carries a map on {m.k} colours, expected {k}")
            e = canonical(u, v)
            if e in store:
                raise ValueError(f"edge {e[0]}-{e[1]} given twice")
            store[e] = m if u < v else m.inverse()
        self._maps = store
        adj: dict[int, set[int]] = {}
        for u, v in store:
            adj.setdefault(u, set()).add(v)
            adj.setdefault(v, set()).add(u)
        self._adj = adj

    @classmethod
    def uniform(cls, g: PlaneGraph, k: int, m: PartialInjection | None = None) -> CorrespondenceAssignment:
        """Every edge carries ``m`` (identity by default) in the ``u < v`` direction."""
        m = PartialInjection.identity(k) if m is None else m
        return cls(k, {e: m for e in g.edges()})

    def __getitem__(self, uv: tuple[int, int]) -> PartialInjection:
        u, v = uv
        try:
            m = self._maps[canonical(u, v)]
        except KeyError:
            raise KeyError(f"no correspondence on {u}-{v}") from None
        return m if u < v else m.inverse()

    def __contains__(self, uv: object) -> bool:
        u, v = uv  # type: ignore[misc]
        return canonical(u, v) in self._maps

    def edges(self) -> list[Edge]:
        return sorted(self._maps)

    def items(self) -> Iterator[tuple[Edge, PartialInjection]]:
        for e in sorted(self._maps):
            yield e, self._maps[e]

    def neighbors(self, v: int) -> set[int]:
        return self._adj.get(v, set())

    def with_map(self, u: int, v: int, m: PartialInjection) -> CorrespondenceAssignment:
        maps = dict(self._maps)
        e = canonical(u, v)
        if e not in maps:
            raise KeyError(f"no correspondence on {u}-{v}")
        maps[e] = m if u < v else m.inverse()
        return CorrespondenceAssignment(self.k, maps)

    def restrict(self, edges: Iterable[Edge]) -> CorrespondenceAssignment:
        return CorrespondenceAssignment(self.k, {canonical(*e): self[e] for e in edges})

    def renumber(self, vertex_map: Mapping[int, int]) -> CorrespondenceAssignment:
        """Rename vertices; edges with an unmapped end are dropped."""
        maps = {}
        for (u, v), m in self._maps.items():
            if u in vertex_map and v in vertex_map:
                maps[(vertex_map[u], vertex_map[v])] = m
        return CorrespondenceAssignment(self.k, maps)

    def total_domain(self) -> int:
        return sum(len(m) for m in self._maps.values())

    def matches(self, g: PlaneGraph) -> bool:
        return set(self._maps) == set(g.edges())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CorrespondenceAssignment):
            return NotImplemented
        return self.k == other.k and self._maps == other._maps

    def __hash__(self) -> int:
        return hash((self.k, tuple(sorted(self._maps.items()))))

    def __repr__(self) -> str:
        return f"CorrespondenceAssignment(k={self.k}, edges={len(self._maps)})"


def _check_walk(c: CorrespondenceAssignment, w: Walk) -> None:
    if len(w) == 0:
        raise ValueError("empty walk")
    for a, b in zip(w, w[1:]):
        if (a, b) not in c:
            raise ValueError(f"walk steps along non-edge {a}-{b}")


def walk_map(c: CorrespondenceAssignment, w: Walk) -> PartialInjection:
    _check_walk(c, w)
    maps = [c[a, b] for a, b in zip(w, w[1:])]
    if not maps:
        return PartialInjection.identity(c.k)
    return compose(*maps)


def is_consistent_on(c: CorrespondenceAssignment, w: Walk) -> bool:
    """The composite along the closed walk fixes every colour of its domain.

    Depends on where the walk starts, not only on its edge sequence.
    """
    if len(w) < 1 or w[0] != w[-1]:
        raise ValueError("walk is not closed")
    return walk_map(c, w).is_straight()


def triangle_walks(c: CorrespondenceAssignment) -> Iterator[tuple[int, int, int, int]]:
    """All closed walks of length 3: six per triangle."""
    for u, v in c.edges():
        for w in sorted(c.neighbors(u) & c.neighbors(v)):
            if w > v:
                for a, b, d in ((u, v, w), (v, w, u), (w, u, v)):
                    yield (a, b, d, a)
                    yield (a, d, b, a)


def inconsistent_triangle_walks(c: CorrespondenceAssignment) -> list[tuple[int, int, int, int]]:
    return [w for w in triangle_walks(c) if not is_consistent_on(c, w)]


def is_consistent_all_triangles(c: CorrespondenceAssignment) -> bool:
    return all(is_consistent_on(c, w) for w in triangle_walks(c))


class DisjointSet:
    """Union-find over hashable items with path halving."""

    def __init__(self) -> None:
        self._parent: dict = {}

    def find(self, x):
        parent = self._parent
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, x, y) -> None:
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            if ry < rx:
                rx, ry = ry, rx
            self._parent[ry] = rx


def cover_classes(c: CorrespondenceAssignment, vertices: Iterable[int]) -> DisjointSet:
    """Union-find on ``(v, colour)`` pairs linked along every edge map."""
    ds = DisjointSet()
    for v in vertices:
        for col in range(1, c.k + 1):
            ds.find((v, col))
    for (u, v), m in c.items():
        for a, b in m.pairs():
            ds.union((u, a), (v, b))
    return ds


def inconsistency_witness(c: CorrespondenceAssignment) -> tuple[int, int, int] | None:
    """``(v, c1, c2)`` with ``(v, c1)`` and ``(v, c2)`` linked, or ``None``."""
    verts = sorted({x for e in c.edges() for x in e})
    ds = cover_classes(c, verts)
    for v in verts:
        seen: dict = {}
        for col in range(1, c.k + 1):
            r = ds.find((v, col))
            if r in seen:
                return v, seen[r], col
            seen[r] = col
    return None


def is_consistent_global(c: CorrespondenceAssignment) -> bool:
    """Consistent on every closed walk.

    Checked through the components of the cover structure on
    ``V x [k]``; no component may contain two colours of one vertex.
    """
    return inconsistency_witness(c) is None


def is_straight(c: CorrespondenceAssignment, u: int, v: int) -> bool:
    return c[u, v].is_straight()


def is_full(c: CorrespondenceAssignment, u: int, v: int) -> bool:
    return c[u, v].is_full()
