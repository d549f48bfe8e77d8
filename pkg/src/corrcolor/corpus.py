"""Seeded generators for graphs without 4- to 8-cycles, assignments and targets.

Graphs are built constructively (long cycles, triangle chains, ears and
paths added inside faces) and every result is re-checked with
:func:`in_class` before it is returned.  All randomness flows through an
explicit ``random.Random`` so a seed reproduces a corpus exactly.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from itertools import combinations, permutations
from typing import Iterable, Sequence

from .correspondence import CorrespondenceAssignment, PartialInjection, inconsistent_triangle_walks
from .formats import parse_pg
from .planegraph import EmbeddingError, PlaneGraph, in_class
from .solver import TargetInstance, conflicts
from .transforms import ListAssignment

GADGETS = ("triangle", "c9", "c13", "tetrad1", "tetrad2", "tetrad3", "tetrad_blocked", "face9")
GRAPH_KINDS = ("curated", "cycle", "triangle-chain", "long-cycle-sum", "grown")


class GenerationError(RuntimeError):
    pass


# -- curated gadgets ---------------------------------------------------------


def load_gadget(name: str) -> tuple[PlaneGraph, frozenset[int] | None]:
    text = resources.files("corrcolor").joinpath(f"data/{name}.pg").read_text()
    return parse_pg(text, source=f"{name}.pg")


# -- graph builders ----------------------------------------------------------


def cycle_graph(n: int) -> PlaneGraph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return PlaneGraph({v: [v % n + 1, (v - 2) % n + 1] for v in range(1, n + 1)})


def triangle_chain(gaps: Sequence[int]) -> PlaneGraph:
    """Triangles joined in a row by paths with the given numbers of edges.

    Every vertex has degree at most three and lies on at most one cycle,
    so any rotation is planar.
    """
    if any(g < 1 for g in gaps):
        raise ValueError("gaps must be positive")
    adj: dict[int, list[int]] = {}

    def link(a: int, b: int) -> None:
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)

    nxt = 1
    tail = None
    for i in range(len(gaps) + 1):
        a, b, c = nxt, nxt + 1, nxt + 2
        nxt += 3
        link(a, b), link(b, c), link(c, a)
        if tail is not None:
            prev = tail
            for _ in range(gaps[i - 1] - 1):
                link(prev, nxt)
                prev, nxt = nxt, nxt + 1
            link(prev, a)
        tail = c
    return PlaneGraph({v: adj[v] for v in range(1, nxt)})


def cycle_with_path(length: int, gap: int, path_len: int) -> PlaneGraph:
    """A cycle of ``length`` plus a path of ``path_len`` edges between vertices ``gap`` apart."""
    g = cycle_graph(length)
    return g.add_path_in_face(0, 0, gap, path_len)


def add_ear(g: PlaneGraph, face: int, i: int) -> PlaneGraph:
    """Triangle on the edge between walk positions ``i`` and ``i + 1`` of ``face``."""
    return g.add_path_in_face(face, i, i + 1, 2)


def grow(g: PlaneGraph, rng: random.Random, max_n: int, steps: int) -> PlaneGraph:
    """Random ears and face paths, keeping only additions that stay in the class."""
    for _ in range(steps):
        fid = rng.randrange(len(g.faces))
        walk = g.faces[fid]
        t = len(walk)
        if t < 3:
            continue
        i = rng.randrange(t)
        if rng.random() < 0.5:
            j, length = i + 1, 2
        else:
            j, length = rng.randrange(t), rng.randint(1, 9)
        if g.n + length - 1 > max_n:
            continue
        try:
            h = g.add_path_in_face(fid, i, j, length)
        except (ValueError, EmbeddingError):
            continue
        if in_class(h):
            g = h
    return g


def random_graph(rng: random.Random, kind: str, max_n: int) -> PlaneGraph:
    """One connected class member with at most ``max_n`` vertices."""
    if max_n < 3:
        raise ValueError("max_n must be at least 3")
    if kind == "curated":
        fits = [name for name in GADGETS if load_gadget(name)[0].n <= max_n]
        g = load_gadget(rng.choice(fits))[0]
    elif kind == "cycle":
        sizes = [3, *range(9, max_n + 1)]
        g = cycle_graph(rng.choice(sizes))
    elif kind == "triangle-chain":
        count = rng.randint(1, max(1, (max_n + 1) // 4))
        gaps = [rng.randint(1, 3) for _ in range(count - 1)]
        while 3 * count + sum(g - 1 for g in gaps) > max_n and count > 1:
            count -= 1
            gaps = gaps[: count - 1]
        g = triangle_chain(gaps)
    elif kind == "long-cycle-sum":
        if max_n < 13:
            g = cycle_graph(rng.choice([3, *range(9, max_n + 1)]))
        else:
            length = rng.randint(9, max_n - 4)
            gap = rng.randint(1, length // 2)
            lo = max(1, 9 - gap, 9 - (length - gap))
            hi = max_n - length + 1
            if lo > hi:
                g = cycle_graph(length)
            else:
                g = cycle_with_path(length, gap, rng.randint(lo, hi))
    elif kind == "grown":
        start = cycle_graph(rng.choice([3, *range(9, min(max_n, 12) + 1)]))
        g = grow(start, rng, max_n, steps=rng.randint(1, 12))
    else:
        raise ValueError(f"unknown graph kind {kind!r}")
    if not in_class(g):
        raise GenerationError(f"{kind} generator produced a graph with a 4-8 cycle")
    return g


# -- assignments ---------------------------------------------------------------


@lru_cache(maxsize=None)
def all_partial_injections(k: int) -> tuple[PartialInjection, ...]:
    out = []
    cols = range(1, k + 1)
    for size in range(k + 1):
        for dom in combinations(cols, size):
            for img in permutations(cols, size):
                out.append(PartialInjection.from_pairs(k, zip(dom, img)))
    return tuple(out)


@lru_cache(maxsize=None)
def all_permutations(k: int) -> tuple[PartialInjection, ...]:
    return tuple(PartialInjection.from_pairs(k, zip(range(1, k + 1), p)) for p in permutations(range(1, k + 1)))


def _draw(rng: random.Random, k: int, mode: str) -> PartialInjection:
    if mode == "uniform":
        return rng.choice(all_partial_injections(k))
    if mode == "full":
        return rng.choice(all_permutations(k))
    raise ValueError(f"unknown assignment mode {mode!r}")


def random_assignment(
    g: PlaneGraph, k: int, rng: random.Random, mode: str = "uniform", max_retries: int = 1000
) -> CorrespondenceAssignment:
    """Independent per-edge draws, then resampling on triangles until all 3-walks are consistent.

    ``mode`` is ``uniform`` (all partial injections), ``full``
    (permutations only) or ``mixed`` (each edge full with probability 1/2).
    """
    def one() -> PartialInjection:
        if mode == "mixed":
            return _draw(rng, k, "full" if rng.random() < 0.5 else "uniform")
        return _draw(rng, k, mode)

    maps = {e: one() for e in g.edges()}
    for _ in range(max_retries):
        c = CorrespondenceAssignment(k, maps)
        bad = inconsistent_triangle_walks(c)
        if not bad:
            return c
        a, b, d, _ = bad[0]
        u, v = sorted(rng.choice([(a, b), (b, d), (d, a)]))
        maps[(u, v)] = one()
    raise GenerationError(f"no triangle-consistent assignment after {max_retries} resamples")


def random_precoloring(
    c: CorrespondenceAssignment, vertices: Iterable[int], rng: random.Random
) -> dict[int, int] | None:
    """A uniformly shuffled backtracking search for a valid colouring of ``vertices``."""
    order = sorted(vertices)
    rng.shuffle(order)
    f: dict[int, int] = {}

    def ok(v: int) -> bool:
        return all(c[v, u](f[v]) != f[u] for u in c.neighbors(v) if u in f)

    def place(i: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        cols = list(range(1, c.k + 1))
        rng.shuffle(cols)
        for col in cols:
            f[v] = col
            if ok(v) and place(i + 1):
                return True
        del f[v]
        return False

    return dict(sorted(f.items())) if place(0) else None


def random_lists(g: PlaneGraph, k: int, rng: random.Random, palette: int | None = None) -> ListAssignment:
    labels = list(range(1, (palette or k + 2) + 1))
    return ListAssignment(k, {v: tuple(rng.sample(labels, k)) for v in g.vertices})


# -- targets -----------------------------------------------------------------


@dataclass(frozen=True)
class CorpusSpec:
    """What to generate: graph kinds, size bound, seed and assignment mode."""

    kinds: tuple[str, ...] = GRAPH_KINDS
    max_n: int = 16
    seed: int = 0
    mode: str = "mixed"
    k: int = 3

    def rng(self, index: int) -> random.Random:
        return random.Random(f"{self.seed}:{index}")


def choose_boundary(g: PlaneGraph, rng: random.Random, max_s: int = 12) -> tuple[PlaneGraph, frozenset[int]]:
    """``S`` empty, a single vertex, or the vertex set of a face made outer."""
    pick = rng.randrange(3)
    if pick == 0:
        return g, frozenset()
    if pick == 1:
        return g, frozenset({rng.choice(list(g.vertices))})
    small = [f for f, w in enumerate(g.faces) if len(set(w)) <= max_s]
    if not small:
        return g, frozenset()
    g = g.with_outer(rng.choice(small))
    return g, g.outer_vertices


def random_target(spec: CorpusSpec, index: int, max_retries: int = 20) -> TargetInstance:
    """Target number ``index`` of the corpus; the same spec and index give the same target."""
    rng = spec.rng(index)
    kind = spec.kinds[index % len(spec.kinds)]
    g = random_graph(rng, kind, spec.max_n)
    g, s = choose_boundary(g, rng)
    for _ in range(max_retries):
        c = random_assignment(g, spec.k, rng, spec.mode)
        f0 = random_precoloring(c, s, rng)
        if f0 is not None and not conflicts(c, f0):
            return TargetInstance(g, c, s, f0)
    raise GenerationError(f"no valid precolouring found for target {index}")


def corpus_graphs(spec: CorpusSpec, count: int) -> list[PlaneGraph]:
    """All gadgets followed by ``count`` generated graphs."""
    out = [load_gadget(name)[0] for name in GADGETS]
    for i in range(count):
        rng = spec.rng(i)
        out.append(random_graph(rng, spec.kinds[i % len(spec.kinds)], spec.max_n))
    return out
