"""Precoloured extension of correspondence colourings.

``solve`` is a backtracking search (minimum remaining candidates, ties
by vertex id, colours ascending) with forward checking along the edge
maps.  ``brute_force`` enumerates every extension and is kept completely
separate so it can serve as an oracle.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

import numpy as np

from .correspondence import CorrespondenceAssignment, inconsistent_triangle_walks
from .planegraph import PlaneGraph, shortest_cycle_in_range

Coloring = dict[int, int]

MAX_TARGET_S = 12


@dataclass(frozen=True)
class Violation:
    name: str
    message: str
    witness: object = None

    def __str__(self) -> str:
        return f"{self.name}: {self.message}"


class InvalidInstance(ValueError):
    def __init__(self, violations: list[Violation]):
        super().__init__("; ".join(str(v) for v in violations))
        self.violations = violations


@dataclass(frozen=True)
class TargetInstance:
    """A plane graph, a boundary set ``s``, an assignment and a precolouring of ``s``."""

    g: PlaneGraph
    c: CorrespondenceAssignment
    s: frozenset[int] = frozenset()
    f0: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "s", frozenset(self.s))
        object.__setattr__(self, "f0", dict(self.f0))

    @property
    def k(self) -> int:
        return self.c.k


def conflicts(c: CorrespondenceAssignment, f: Mapping[int, int]) -> list[tuple[int, int]]:
    """Edges ``uv`` with both ends coloured and ``C_uv(f(u)) == f(v)``."""
    bad = []
    for (u, v), m in c.items():
        if u in f and v in f and m(f[u]) == f[v]:
            bad.append((u, v))
    return bad


def is_valid_coloring(c: CorrespondenceAssignment, f: Mapping[int, int]) -> bool:
    return not conflicts(c, f)


def instance_problems(inst: TargetInstance) -> list[Violation]:
    """Well-formedness needed by any solve, theorem regime or not."""
    g, c = inst.g, inst.c
    out = []
    if not c.matches(g):
        extra = sorted(set(c.edges()) - set(g.edges()))
        missing = sorted(set(g.edges()) - set(c.edges()))
        out.append(Violation("edges", "assignment edges differ from graph edges", (missing, extra)))
    if not inst.s <= set(g.vertices):
        out.append(Violation("S", "S names unknown vertices", sorted(inst.s - set(g.vertices))))
    if set(inst.f0) != set(inst.s):
        out.append(Violation("f0-domain", "precolouring domain differs from S",
                             sorted(set(inst.f0) ^ set(inst.s))))
    bad_col = sorted(v for v, col in inst.f0.items() if not 1 <= col <= c.k)
    if bad_col:
        out.append(Violation("f0-range", f"colours outside 1..{c.k}", bad_col))
    elif not out:
        clash = conflicts(c, inst.f0)
        if clash:
            out.append(Violation("f0-invalid", "precolouring is not a C-colouring of G[S]", clash))
    return out


def target_violations(inst: TargetInstance) -> list[Violation]:
    """Everything that keeps ``inst`` from being a target of the 3-colour theorem."""
    out = instance_problems(inst)
    g = inst.g
    if inst.k != 3:
        out.append(Violation("k", f"targets use 3 colours, got {inst.k}"))
    cyc = shortest_cycle_in_range(g, 4, 8)
    if cyc is not None:
        out.append(Violation("cycle-4-8", f"cycle of length {len(cyc)}", cyc))
    if len(inst.s) > MAX_TARGET_S:
        out.append(Violation("S-size", f"|S| = {len(inst.s)} > {MAX_TARGET_S}"))
    if len(inst.s) > 1 and inst.s != g.outer_vertices:
        out.append(Violation("S-shape", "S is neither of size <= 1 nor the outer face vertex set",
                             sorted(inst.s)))
    if not any(v.name == "edges" for v in out):
        bad = inconsistent_triangle_walks(inst.c)
        if bad:
            out.append(Violation("triangle-consistency", "inconsistent closed walk of length 3", bad[0]))
    return out


def validate(inst: TargetInstance, as_target: bool = False) -> None:
    problems = target_violations(inst) if as_target else instance_problems(inst)
    if problems:
        raise InvalidInstance(problems)


def _neighbour_tables(inst: TargetInstance) -> dict[int, list[tuple[int, tuple[int, ...]]]]:
    nb: dict[int, list[tuple[int, tuple[int, ...]]]] = {v: [] for v in inst.g.vertices}
    for (u, v), m in inst.c.items():
        nb[u].append((v, m.table))
        nb[v].append((u, m.inverse().table))
    return nb


def solve(inst: TargetInstance, as_target: bool = False) -> Coloring | None:
    """A total colouring extending ``f0``, or ``None`` when none exists."""
    validate(inst, as_target)
    k = inst.k
    nb = _neighbour_tables(inst)
    full = (1 << k) - 1
    cand = {v: full for v in inst.g.vertices if v not in inst.s}
    f: Coloring = dict(inst.f0)
    for v, col in inst.f0.items():
        for u, table in nb[v]:
            d = table[col - 1]
            if d and u in cand:
                cand[u] &= ~(1 << (d - 1))
    if any(mask == 0 for mask in cand.values()):
        return None

    def search(cand: dict[int, int]) -> bool:
        if not cand:
            return True
        v = min(cand, key=lambda x: (bin(cand[x]).count("1"), x))
        mask = cand[v]
        for col in range(1, k + 1):
            if not mask >> (col - 1) & 1:
                continue
            nxt = dict(cand)
            del nxt[v]
            ok = True
            for u, table in nb[v]:
                d = table[col - 1]
                if d and u in nxt:
                    nxt[u] &= ~(1 << (d - 1))
                    if not nxt[u]:
                        ok = False
                        break
            if ok:
                f[v] = col
                if search(nxt):
                    return True
                del f[v]
        return False

    return dict(sorted(f.items())) if search(cand) else None


def _all_rows(k: int, m: int) -> np.ndarray:
    if m == 0:
        return np.zeros((1, 0), dtype=np.int8)
    idx = np.unravel_index(np.arange(k ** m), (k,) * m)
    return (np.stack(idx, axis=1) + 1).astype(np.int8)


def _valid_rows(inst: TargetInstance, max_free: int) -> tuple[np.ndarray, list[int]]:
    g, c = inst.g, inst.c
    if c.k > 4:
        raise ValueError(f"brute force supports k <= 4, got {c.k}")
    free = [v for v in g.vertices if v not in inst.s]
    if len(free) > max_free:
        raise ValueError(f"{len(free)} free vertices exceed the brute-force bound {max_free}")
    rows = _all_rows(c.k, len(free))
    cols = np.empty((rows.shape[0], g.n), dtype=np.int8)
    pos = {v: i for i, v in enumerate(free)}
    for v in g.vertices:
        cols[:, v - 1] = rows[:, pos[v]] if v in pos else inst.f0[v]
    ok = np.ones(rows.shape[0], dtype=bool)
    for (u, v), m in c.items():
        lookup = np.array((0, *m.table), dtype=np.int8)
        ok &= lookup[cols[:, u - 1]] != cols[:, v - 1]
    return cols[ok], list(g.vertices)


def brute_force(inst: TargetInstance, max_free: int = 12) -> set[tuple[int, ...]]:
    """Every total valid colouring extending ``f0``, as tuples over ``1..n``.

    Enumerates all ``k ** |V - S|`` extensions and filters them by the
    definition of a C-colouring.
    """
    rows, _ = _valid_rows(inst, max_free)
    return {tuple(int(x) for x in row) for row in rows}


def count_colorings(inst: TargetInstance, max_free: int = 12) -> int:
    return int(_valid_rows(inst, max_free)[0].shape[0])


def measure(inst: TargetInstance) -> tuple[int, int, int]:
    """``(|V|, |E| - |E(G[S])|, -sum |dom C_uv|)``, compared lexicographically."""
    g, s = inst.g, inst.s
    inside = sum(1 for u, v in g.edges() if u in s and v in s)
    return g.n, g.num_edges - inside, -inst.c.total_domain()


def sub_instance(inst: TargetInstance, keep: Iterable[int]) -> tuple[TargetInstance, dict[int, int]]:
    """Instance induced on ``keep``, vertices renumbered densely."""
    h, new_id = inst.g.induced(keep)
    c = inst.c.renumber(new_id)
    s = frozenset(new_id[v] for v in inst.s if v in new_id)
    f0 = {new_id[v]: col for v, col in inst.f0.items() if v in new_id}
    return TargetInstance(h, c, s, f0), new_id


def minimal_failed_subinstance(inst: TargetInstance) -> list[int] | None:
    """Greedy vertex deletion that keeps the instance unsolvable.

    Returns the kept vertex ids of the original instance, or ``None`` when
    the instance is solvable.  Vertices of ``S`` are never deleted.
    """
    if solve(inst) is not None:
        return None
    keep = set(inst.g.vertices)
    for v in sorted(keep - inst.s):
        trial = keep - {v}
        sub, _ = sub_instance(inst, trial)
        if solve(sub) is None:
            keep = trial
    return sorted(keep)
