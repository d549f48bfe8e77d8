"""Random instance builders for tests (not restricted to the theorem's class)."""

from __future__ import annotations

import random

from corrcolor.corpus import all_partial_injections, cycle_graph
from corrcolor.correspondence import CorrespondenceAssignment
from corrcolor.planegraph import EmbeddingError, PlaneGraph
from corrcolor.solver import TargetInstance


def random_plane_graph(rng: random.Random, max_n: int, extra: int | None = None) -> PlaneGraph:
    """A cycle with random paths and chords added inside faces; any cycle lengths allowed."""
    g = cycle_graph(rng.randint(3, max(3, min(max_n, 6))))
    for _ in range(rng.randint(0, 6) if extra is None else extra):
        fid = rng.randrange(len(g.faces))
        t = len(g.faces[fid])
        i, j = rng.randrange(t), rng.randrange(t)
        length = rng.randint(1, 3)
        if g.n + length - 1 > max_n:
            continue
        try:
            g = g.add_path_in_face(fid, i, j, length)
        except (ValueError, EmbeddingError):
            pass
    return g


def edgeless(n: int) -> PlaneGraph:
    return PlaneGraph({v: [] for v in range(1, n + 1)})


def random_maps(g: PlaneGraph, k: int, rng: random.Random) -> CorrespondenceAssignment:
    pool = all_partial_injections(k)
    return CorrespondenceAssignment(k, {e: rng.choice(pool) for e in g.edges()})


def random_instance(rng: random.Random, max_n: int = 10, k: int | None = None, precolor: bool = True) -> TargetInstance:
    """Library-mode instance: random graph, random maps, random valid-or-not precolouring of a few vertices."""
    k = k or rng.randint(1, 3)
    g = random_plane_graph(rng, max_n)
    c = random_maps(g, k, rng)
    s = frozenset(rng.sample(list(g.vertices), rng.randint(0, min(3, g.n)))) if precolor else frozenset()
    f0 = {v: rng.randint(1, k) for v in s}
    inst = TargetInstance(g, c, s, f0)
    from corrcolor.solver import conflicts
    if conflicts(c, f0):
        return TargetInstance(g, c, frozenset(), {})
    return inst
