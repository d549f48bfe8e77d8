"""Simple plane graphs given by a rotation system.

Vertices are the integers ``1..n``.  The embedding is a clockwise cyclic
order of neighbours at every vertex; faces are traced from it and never
supplied directly.  Tracing follows the rule that the dart ``u -> v`` is
followed by ``v -> w`` where ``w`` is the successor of ``u`` in the
rotation at ``v``.
"""

from __future__ import annotations

from collections import deque
from typing import Iterable, Iterator, Mapping, Sequence

Edge = tuple[int, int]
Dart = tuple[int, int]


class EmbeddingError(ValueError):
    """Raised for rotation systems that are not simple planar embeddings."""


def canonical(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


class PlaneGraph:
    """An immutable simple graph with a planar rotation system.

    ``rotations`` maps each vertex ``1..n`` to its neighbours in clockwise
    order.  ``outer`` selects the outer face by id (index into ``faces``);
    when omitted the longest face is used, ties going to the smaller id.
    """

    __slots__ = ("_n", "_rot", "_pos", "_nbrs", "_faces", "_dart_face", "_outer")

    def __init__(
        self,
        rotations: Mapping[int, Sequence[int]] | Sequence[Sequence[int]],
        outer: int | None = None,
    ) -> None:
        if isinstance(rotations, Mapping):
            n = len(rotations)
            if set(rotations) != set(range(1, n + 1)):
                raise EmbeddingError("vertices must be exactly 1..n")
            rot = {v: tuple(rotations[v]) for v in range(1, n + 1)}
        else:
            n = len(rotations)
            rot = {v: tuple(rotations[v - 1]) for v in range(1, n + 1)}
        self._n = n
        self._rot = rot
        self._validate_simple()
        self._pos = {v: {u: i for i, u in enumerate(r)} for v, r in rot.items()}
        self._nbrs = {v: frozenset(r) for v, r in rot.items()}
        self._faces, self._dart_face = self._trace()
        self._check_euler()
        if outer is None:
            outer = self._default_outer()
        elif self._faces and not 0 <= outer < len(self._faces):
            raise EmbeddingError(f"outer face id {outer} out of range")
        self._outer = outer if self._faces else None

    # -- construction ---------------------------------------------------

    def _validate_simple(self) -> None:
        n = self._n
        for v, r in self._rot.items():
            if len(set(r)) != len(r):
                raise EmbeddingError(f"repeated neighbour in rotation of {v} (parallel edge)")
            for u in r:
                if not 1 <= u <= n:
                    raise EmbeddingError(f"rotation of {v} names unknown vertex {u}")
                if u == v:
                    raise EmbeddingError(f"loop at vertex {v}")
                if v not in self._rot[u]:
                    raise EmbeddingError(f"asymmetric rotations: {u} in rot({v}) but not {v} in rot({u})")

    def _trace(self) -> tuple[tuple[tuple[int, ...], ...], dict[Dart, int]]:
        faces: list[tuple[int, ...]] = []
        dart_face: dict[Dart, int] = {}
        for u in range(1, self._n + 1):
            for w in self._rot[u]:
                if (u, w) in dart_face:
                    continue
                fid = len(faces)
                walk = []
                a, b = u, w
                while (a, b) not in dart_face:
                    dart_face[(a, b)] = fid
                    walk.append(a)
                    a, b = b, self.successor(b, a)
                faces.append(tuple(walk))
        return tuple(faces), dart_face

    def _check_euler(self) -> None:
        for comp in self.components():
            if len(comp) == 1:
                continue
            e = sum(len(self._rot[v]) for v in comp) // 2
            f = len({self._dart_face[(v, u)] for v in comp for u in self._rot[v]})
            if len(comp) - e + f != 2:
                raise EmbeddingError(
                    f"rotation system is not planar: V-E+F = {len(comp) - e + f} on component "
                    f"containing {min(comp)}"
                )

    def _default_outer(self) -> int | None:
        if not self._faces:
            return None
        return max(range(len(self._faces)), key=lambda i: (len(self._faces[i]), -i))

    def with_outer(self, face_id: int) -> PlaneGraph:
        """Same embedding, redrawn so that ``face_id`` is the outer face."""
        return PlaneGraph(self._rot, outer=face_id)

    # -- basic queries --------------------------------------------------

    @property
    def n(self) -> int:
        return self._n

    @property
    def vertices(self) -> range:
        return range(1, self._n + 1)

    def rotation(self, v: int) -> tuple[int, ...]:
        return self._rot[v]

    @property
    def rotations(self) -> dict[int, tuple[int, ...]]:
        return dict(self._rot)

    def neighbors(self, v: int) -> frozenset[int]:
        return self._nbrs[v]

    def degree(self, v: int) -> int:
        return len(self._rot[v])

    def has_edge(self, u: int, v: int) -> bool:
        return u in self._nbrs.get(v, ())

    def edges(self) -> list[Edge]:
        return [(u, v) for u in self.vertices for v in sorted(self._nbrs[u]) if u < v]

    @property
    def num_edges(self) -> int:
        return sum(len(r) for r in self._rot.values()) // 2

    def successor(self, v: int, u: int) -> int:
        r = self._rot[v]
        return r[(self._pos[v][u] + 1) % len(r)]

    def predecessor(self, v: int, u: int) -> int:
        r = self._rot[v]
        return r[(self._pos[v][u] - 1) % len(r)]

    # -- faces ----------------------------------------------------------

    @property
    def faces(self) -> tuple[tuple[int, ...], ...]:
        return self._faces

    def face_length(self, face_id: int) -> int:
        return len(self._faces[face_id])

    def face_of_dart(self, u: int, v: int) -> int:
        return self._dart_face[(u, v)]

    def face_of_corner(self, v: int, a: int, b: int) -> int:
        """Face at the angle of ``v`` between rotation-consecutive ``a``, ``b``.

        The two neighbours may be given in either rotation direction.
        """
        if self.successor(v, a) == b:
            return self._dart_face[(a, v)]
        if self.successor(v, b) == a:
            return self._dart_face[(b, v)]
        raise ValueError(f"{a} and {b} are not consecutive around {v}")

    @property
    def outer_face_id(self) -> int | None:
        return self._outer

    @property
    def outer_walk(self) -> tuple[int, ...]:
        return self._faces[self._outer] if self._outer is not None else ()

    @property
    def outer_vertices(self) -> frozenset[int]:
        return frozenset(self.outer_walk)

    def faces_at(self, v: int) -> list[int]:
        """Distinct faces incident with ``v``, in rotation order."""
        seen: list[int] = []
        for u in self._rot[v]:
            f = self._dart_face[(v, u)]
            if f not in seen:
                seen.append(f)
        return seen

    def find_face(self, walk: Sequence[int]) -> int | None:
        """Id of the face whose boundary walk is ``walk`` up to rotation/reversal.

        The two faces of a cycle read the same up to reversal, so a match
        in the traced direction wins over a reversed one.
        """
        target = tuple(walk)
        t = len(target)
        for reverse in (False, True):
            for fid, f in enumerate(self._faces):
                if len(f) != t:
                    continue
                seq = f[::-1] if reverse else f
                if any(seq[s:] + seq[:s] == target for s in range(t)):
                    return fid
        return None

    # -- structure ------------------------------------------------------

    def components(self) -> list[list[int]]:
        seen: set[int] = set()
        comps = []
        for s in self.vertices:
            if s in seen:
                continue
            seen.add(s)
            comp = [s]
            queue = deque([s])
            while queue:
                x = queue.popleft()
                for y in self._rot[x]:
                    if y not in seen:
                        seen.add(y)
                        comp.append(y)
                        queue.append(y)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return self._n <= 1 or len(self.components()) == 1

    def triangles(self) -> list[tuple[int, int, int]]:
        out = []
        for u, v in self.edges():
            for w in sorted(self._nbrs[u] & self._nbrs[v]):
                if w > v:
                    out.append((u, v, w))
        return out

    def induced(self, keep: Iterable[int]) -> tuple[PlaneGraph, dict[int, int]]:
        """Subgraph induced by ``keep``, renumbered densely in id order.

        Returns the graph and the old-to-new vertex map.  The inherited
        embedding is planar; the outer face is the default choice.
        """
        kept = sorted(set(keep))
        new_id = {v: i for i, v in enumerate(kept, start=1)}
        rot = {new_id[v]: [new_id[u] for u in self._rot[v] if u in new_id] for v in kept}
        return PlaneGraph(rot), new_id

    def add_path_in_face(self, face_id: int, i: int, j: int, length: int) -> PlaneGraph:
        """Add a path of ``length`` edges inside a face between two corners.

        ``i`` and ``j`` index the face walk; the new internal vertices get
        ids ``n+1, n+2, ...``.  The outer face keeps the walk that contains
        the old outer face's first dart.
        """
        walk = self._faces[face_id]
        t = len(walk)
        a, b = walk[i % t], walk[j % t]
        if a == b:
            raise ValueError("path ends must be distinct vertices")
        if length < 1:
            raise ValueError("length must be positive")
        if length == 1 and self.has_edge(a, b):
            raise EmbeddingError(f"edge {a}-{b} already present")
        inner = list(range(self._n + 1, self._n + length))
        path = [a, *inner, b]
        rot = {v: list(r) for v, r in self._rot.items()}
        # insert right after the incoming walk neighbour, i.e. into the corner
        for end, pos, nxt in ((a, i, path[1]), (b, j, path[-2])):
            prev = walk[(pos - 1) % t]
            r = rot[end]
            r.insert(r.index(prev) + 1 if r else 0, nxt)
        for idx, x in enumerate(inner, start=1):
            rot[x] = [path[idx - 1], path[idx + 1]]
        return _reroot_like(PlaneGraph(rot), self)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PlaneGraph):
            return NotImplemented
        return self._rot == other._rot and self._outer == other._outer

    def __hash__(self) -> int:
        return hash((tuple(self._rot[v] for v in self.vertices), self._outer))

    def __repr__(self) -> str:
        return f"PlaneGraph(n={self._n}, m={self.num_edges}, faces={len(self._faces)})"


def _reroot_like(g: PlaneGraph, old: PlaneGraph) -> PlaneGraph:
    if old.outer_face_id is None:
        return g
    walk = old.outer_walk
    dart = (walk[0], walk[1 % len(walk)])
    if dart in g._dart_face:
        return g.with_outer(g.face_of_dart(*dart))
    return g


def trace_faces(g: PlaneGraph) -> list[tuple[int, ...]]:
    return list(g.faces)


# -- cycles and paths ---------------------------------------------------


def _bfs_dist(g: PlaneGraph, s: int, allowed) -> dict[int, int]:
    dist = {s: 0}
    queue = deque([s])
    while queue:
        x = queue.popleft()
        for y in g.rotation(x):
            if y not in dist and allowed(y):
                dist[y] = dist[x] + 1
                queue.append(y)
    return dist


def iter_cycles(g: PlaneGraph, lo: int = 3, hi: int | None = None) -> Iterator[tuple[int, ...]]:
    """Simple cycles with ``lo <= length <= hi``.

    Each cycle is produced once, starting at its smallest vertex and
    oriented so that the second vertex is smaller than the last.  Output
    is grouped by start vertex and lexicographic within a start.
    """
    hi = g.n if hi is None else min(hi, g.n)
    for s in g.vertices:
        dist = _bfs_dist(g, s, lambda y, s=s: y >= s)
        path = [s]
        on_path = {s}

        def extend(cur: int) -> Iterator[tuple[int, ...]]:
            p = len(path) - 1
            for w in sorted(g.neighbors(cur)):
                if w == s and p >= 2 and lo <= p + 1 <= hi and path[1] < path[-1]:
                    yield tuple(path)
                if w <= s or w in on_path or p + 1 + dist.get(w, hi + 1) > hi:
                    continue
                path.append(w)
                on_path.add(w)
                yield from extend(w)
                path.pop()
                on_path.discard(w)

        yield from extend(s)


def _first_cycle_of_length(g: PlaneGraph, length: int) -> tuple[int, ...] | None:
    for cyc in iter_cycles(g, length, length):
        return cyc
    return None


def shortest_cycle_in_range(g: PlaneGraph, lo: int, hi: int) -> tuple[int, ...] | None:
    """Lexicographically least among the shortest cycles with length in [lo, hi]."""
    if not 3 <= lo <= hi:
        raise ValueError(f"invalid cycle length range [{lo}, {hi}]")
    for length in range(lo, min(hi, g.n) + 1):
        best = None
        for cyc in iter_cycles(g, length, length):
            if best is None or cyc < best:
                best = cyc
        if best is not None:
            return best
    return None


def in_class(g: PlaneGraph) -> bool:
    """True when ``g`` has no cycle of length 4 to 8."""
    return shortest_cycle_in_range(g, 4, 8) is None


def has_path_at_most(g: PlaneGraph, u: int, v: int, length: int, excluded: Iterable[int] = ()) -> bool:
    excluded = set(excluded)
    if u in excluded or v in excluded:
        raise ValueError("path ends may not be excluded")
    if u == v:
        return True
    dist = _bfs_dist(g, u, lambda y: y not in excluded)
    return v in dist and dist[v] <= length


# -- blocks -------------------------------------------------------------


def blocks(g: PlaneGraph, h: Iterable[Edge] | None = None) -> list[tuple[Edge, ...]]:
    """Blocks of the subgraph ``h`` (all of ``g`` by default).

    Blocks come in breadth-first order over the block-cut tree of each
    component, components by smallest vertex, so every block meets the
    union of the earlier ones in at most one vertex.
    """
    if h is None:
        return edge_blocks(g.edges())
    edge_set = {canonical(u, v) for u, v in h}
    for u, v in edge_set:
        if not g.has_edge(u, v):
            raise ValueError(f"{u}-{v} is not an edge of the graph")
    return edge_blocks(edge_set)


def edge_blocks(edges: Iterable[Edge]) -> list[tuple[Edge, ...]]:
    """Blocks of the graph formed by ``edges``; ordering as in :func:`blocks`."""
    edge_set = {canonical(u, v) for u, v in edges}
    adj: dict[int, list[int]] = {}
    for u, v in edge_set:
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)
    for nb in adj.values():
        nb.sort()

    found: list[frozenset[Edge]] = []
    disc: dict[int, int] = {}
    low: dict[int, int] = {}
    stack: list[Edge] = []

    def dfs(x: int, parent: int | None) -> None:
        disc[x] = low[x] = len(disc)
        for y in adj[x]:
            if y == parent:
                continue
            if y not in disc:
                stack.append(canonical(x, y))
                dfs(y, x)
                low[x] = min(low[x], low[y])
                if low[y] >= disc[x]:
                    comp = set()
                    while True:
                        e = stack.pop()
                        comp.add(e)
                        if e == canonical(x, y):
                            break
                    found.append(frozenset(comp))
            elif disc[y] < disc[x]:
                stack.append(canonical(x, y))
                low[x] = min(low[x], disc[y])

    for s in sorted(adj):
        if s not in disc:
            dfs(s, None)

    by_vertex: dict[int, list[int]] = {}
    for i, b in enumerate(found):
        for x in {x for e in b for x in e}:
            by_vertex.setdefault(x, []).append(i)
    key = lambda i: min(found[i])  # noqa: E731
    order: list[int] = []
    done: set[int] = set()
    for s in sorted(adj):
        if any(i in done for i in by_vertex[s]):
            continue
        start = min(by_vertex[s], key=key)
        done.add(start)
        queue = deque([start])
        while queue:
            i = queue.popleft()
            order.append(i)
            for x in sorted({x for e in found[i] for x in e}):
                for j in sorted(by_vertex[x], key=key):
                    if j not in done:
                        done.add(j)
                        queue.append(j)
    return [tuple(sorted(found[i])) for i in order]


def cut_vertices(g: PlaneGraph) -> list[int]:
    count: dict[int, int] = {}
    for b in blocks(g):
        for x in {x for e in b for x in e}:
            count[x] = count.get(x, 0) + 1
    return sorted(x for x, c in count.items() if c > 1)


def is_biconnected(g: PlaneGraph) -> bool:
    return g.n >= 3 and g.is_connected() and not cut_vertices(g)


# -- cycle sides ----------------------------------------------------------


def cycle_sides(g: PlaneGraph, cycle: Sequence[int]) -> tuple[set[int], set[int]]:
    """Partition the faces of the cycle's component into its two sides.

    The first set holds the faces reached from the forward darts of
    ``cycle`` without crossing a cycle edge, the second the faces reached
    from the backward darts.
    """
    t = len(cycle)
    cyc_edges = {canonical(cycle[i], cycle[(i + 1) % t]) for i in range(t)}

    def flood(start: int) -> set[int]:
        region = {start}
        queue = deque([start])
        while queue:
            f = queue.popleft()
            walk = g.faces[f]
            for i, a in enumerate(walk):
                b = walk[(i + 1) % len(walk)]
                if canonical(a, b) in cyc_edges:
                    continue
                other = g.face_of_dart(b, a)
                if other not in region:
                    region.add(other)
                    queue.append(other)
        return region

    fwd = flood(g.face_of_dart(cycle[0], cycle[1]))
    bwd = flood(g.face_of_dart(cycle[1], cycle[0]))
    return fwd, bwd


def interior_vertices(g: PlaneGraph, cycle: Sequence[int]) -> frozenset[int] | None:
    """Vertices strictly inside ``cycle``, the side away from the outer face.

    Returns ``None`` when the cycle bounds the outer face or the outer face
    lies in a different component.
    """
    fwd, bwd = cycle_sides(g, cycle)
    outer = g.outer_face_id
    if outer in fwd:
        inner = bwd
        outer_side = fwd
    elif outer in bwd:
        inner = fwd
        outer_side = bwd
    else:
        return None
    if outer_side == {outer}:
        return None
    on_cycle = set(cycle)
    return frozenset(x for f in inner for x in g.faces[f] if x not in on_cycle)
