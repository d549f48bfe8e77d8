import random

import pytest
from hypothesis import given, strategies as st

from corrcolor.corpus import cycle_graph, random_lists
from corrcolor.correspondence import (
    CorrespondenceAssignment,
    PartialInjection,
    is_consistent_global,
    is_full,
    is_straight,
)
from corrcolor.planegraph import PlaneGraph
from corrcolor.transforms import (
    ListAssignment,
    Relabeling,
    StraightenError,
    apply_relabeling,
    cycle_composite,
    from_lists,
    is_list_coloring,
    saturate,
    straighten,
    to_lists,
    transport_coloring,
)

from helpers import edgeless, random_maps, random_plane_graph
from oracles import colorings, list_colorings, raw_maps

P = PartialInjection.from_pairs
I3 = PartialInjection.identity(3)
EDGE = PlaneGraph({1: [2], 2: [1]})
TRIANGLE = PlaneGraph({1: [2, 3], 2: [3, 1], 3: [1, 2]})


def partial_triangle():
    return CorrespondenceAssignment(3, {
        (1, 2): P(3, [(1, 1), (2, 2)]),
        (2, 3): P(3, [(1, 1), (3, 3)]),
        (1, 3): P(3, [(1, 1), (2, 3)]).inverse(),
    })


def random_forest(g, rng):
    """Random spanning-forest subset of the edges (union-find by hand)."""
    parent = {v: v for v in g.vertices}

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    out = []
    edges = g.edges()
    rng.shuffle(edges)
    for u, v in edges:
        if rng.random() < 0.7 and find(u) != find(v):
            parent[find(u)] = find(v)
            out.append((u, v))
    return out


def test_relabeling_rejects_non_permutation():
    with pytest.raises(ValueError):
        Relabeling(3, {1: (1, 1, 2)})


def test_relabeling_drops_identities():
    assert Relabeling(3, {1: (1, 2, 3)}) == Relabeling(3)
    assert Relabeling(3, {1: (2, 1, 3)}).moved == {1}


def test_relabeling_inverse():
    r = Relabeling(3, {1: (2, 3, 1), 4: (3, 1, 2)})
    for v in (1, 2, 4):
        for c in (1, 2, 3):
            assert r.inverse()(v, r(v, c)) == c == r.inverse_at(v, r(v, c))


def test_identity_relabeling_is_noop():
    c = partial_triangle()
    assert apply_relabeling(c, Relabeling(3)) == c
    assert transport_coloring({1: 2, 2: 3}, Relabeling(3)) == {1: 2, 2: 3}


def test_swap_on_one_endpoint():
    c = CorrespondenceAssignment(3, {(1, 2): I3})
    assert apply_relabeling(c, Relabeling(3, {1: (2, 1, 3)}))[1, 2].pairs() == [(1, 2), (2, 1), (3, 3)]
    assert transport_coloring({1: 1}, Relabeling(3, {1: (2, 1, 3)})) == {1: 2}


@given(st.integers(0, 10**6))
def test_relabeling_transports_colorings(seed):
    rng = random.Random(seed)
    g = random_plane_graph(rng, 6)
    c = random_maps(g, 3, rng)
    r = Relabeling(3, {v: tuple(rng.sample([1, 2, 3], 3)) for v in g.vertices if rng.random() < 0.5})
    c2 = apply_relabeling(c, r)
    before = colorings(g.n, raw_maps(c), 3)
    after = colorings(g.n, raw_maps(c2), 3)
    moved = {tuple(r(v, f[v - 1]) for v in range(1, g.n + 1)) for f in before}
    assert moved == after
    assert is_consistent_global(c) == is_consistent_global(c2)


def test_straighten_single_edge():
    c = CorrespondenceAssignment(3, {(1, 2): P(3, [(1, 2), (2, 1), (3, 3)])})
    c2, r = straighten(c, [(1, 2)])
    assert is_straight(c2, 1, 2) and is_full(c2, 1, 2)
    assert len(r.moved) == 1


def test_straighten_rejects_partial_triangle():
    with pytest.raises(StraightenError) as exc:
        straighten(partial_triangle(), TRIANGLE.edges())
    assert exc.value.reason == "not full"
    assert sorted(exc.value.cycle) == [1, 2, 3]


def test_straighten_rejects_inconsistent_full_cycle():
    maps = {e: I3 for e in cycle_graph(4).edges()}
    maps[(1, 4)] = P(3, [(1, 2), (2, 1), (3, 3)])
    with pytest.raises(StraightenError) as exc:
        straighten(CorrespondenceAssignment(3, maps), cycle_graph(4).edges())
    assert exc.value.reason == "inconsistent"
    assert sorted(exc.value.cycle) == [1, 2, 3, 4]


def test_straighten_consistent_full_cycle():
    g = cycle_graph(5)
    rng = random.Random(3)
    # a straight full cycle, then scrambled by a random renaming: still straightenable
    r = Relabeling(3, {v: tuple(rng.sample([1, 2, 3], 3)) for v in g.vertices})
    c = apply_relabeling(CorrespondenceAssignment.uniform(g, 3), r)
    c2, _ = straighten(c, g.edges())
    assert all(is_straight(c2, u, v) for u, v in g.edges())


@given(st.integers(0, 10**6))
def test_straighten_forest(seed):
    rng = random.Random(seed)
    g = random_plane_graph(rng, 8)
    c = random_maps(g, 3, rng)
    h = random_forest(g, rng)
    c2, r = straighten(c, h)
    assert all(is_straight(c2, u, v) for u, v in h)
    touched = {x for e in h for x in e}
    assert r.moved <= touched
    assert apply_relabeling(c, r) == c2
    if g.n <= 7:
        assert bool(colorings(g.n, raw_maps(c), 3)) == bool(colorings(g.n, raw_maps(c2), 3))


def test_saturate_examples():
    full = CorrespondenceAssignment.uniform(cycle_graph(9), 3)
    assert saturate(full, cycle_graph(9)) == full
    c = saturate(CorrespondenceAssignment(3, {(1, 2): PartialInjection.empty(3)}), EDGE)
    assert c[1, 2].is_full()


def test_saturate_skips_triangles_and_s_edges():
    c = saturate(partial_triangle(), TRIANGLE)
    assert c == partial_triangle()
    empty = CorrespondenceAssignment(3, {(1, 2): PartialInjection.empty(3)})
    assert saturate(empty, EDGE, s={1, 2}) == empty


@given(st.integers(0, 10**6))
def test_saturate_only_removes_colorings(seed):
    rng = random.Random(seed)
    g = random_plane_graph(rng, 6)
    c = random_maps(g, 3, rng)
    c2 = saturate(c, g)
    assert colorings(g.n, raw_maps(c2), 3) <= colorings(g.n, raw_maps(c), 3)
    for (u, v), m in c.items():
        assert set(m.pairs()) <= set(c2[u, v].pairs())


def test_from_lists_example():
    lists = ListAssignment(3, {1: (1, 2, 3), 2: (3, 4, 5)})
    c, q = from_lists(EDGE, lists)
    assert c[1, 2].pairs() == [(3, 1)]
    assert q[2] == {3: 1, 4: 2, 5: 3}


def test_from_lists_identical_lists():
    g = cycle_graph(9)
    c, _ = from_lists(g, ListAssignment(3, {v: (1, 2, 3) for v in g.vertices}))
    assert all(is_straight(c, u, v) and is_full(c, u, v) for u, v in g.edges())


def test_list_assignment_validation():
    with pytest.raises(ValueError):
        ListAssignment(3, {1: (1, 2)})
    with pytest.raises(ValueError):
        ListAssignment(2, {1: (1, 1)})
    with pytest.raises(ValueError):
        from_lists(EDGE, ListAssignment(3, {1: (1, 2, 3)}))


@given(st.integers(0, 10**6))
def test_from_lists_preserves_colorings(seed):
    rng = random.Random(seed)
    g = random_plane_graph(rng, 6)
    k = rng.randint(1, 3)
    lists = random_lists(g, k, rng)
    c, q = from_lists(g, lists)
    assert is_consistent_global(c)
    want = list_colorings(g.n, g.edges(), lists.lists)
    got = colorings(g.n, raw_maps(c), k)
    assert {tuple(q[v][lab] for v, lab in enumerate(phi, start=1)) for phi in want} == got
    for phi in want:
        assert is_list_coloring(g, lists, dict(enumerate(phi, start=1)))


def test_to_lists_examples():
    g = cycle_graph(9)
    lists, _ = to_lists(g, CorrespondenceAssignment.uniform(g, 3))
    assert len({lists[v] for v in g.vertices}) == 1
    lists, _ = to_lists(edgeless(4), CorrespondenceAssignment(3, {}))
    labels = [x for v in range(1, 5) for x in lists[v]]
    assert len(set(labels)) == 12


def test_to_lists_rejects_inconsistent():
    with pytest.raises(ValueError):
        to_lists(TRIANGLE, CorrespondenceAssignment(3, {(1, 2): I3, (2, 3): I3,
                                                        (1, 3): P(3, [(1, 2), (2, 1), (3, 3)])}))


@given(st.integers(0, 10**6))
def test_to_lists_preserves_colorings(seed):
    rng = random.Random(seed)
    g = random_plane_graph(rng, 6)
    lists0 = random_lists(g, 3, rng)
    c, _ = from_lists(g, lists0)
    lists, ell = to_lists(g, c)
    want = colorings(g.n, raw_maps(c), 3)
    got = list_colorings(g.n, g.edges(), lists.lists)
    assert {tuple(ell[(v, col)] for v, col in enumerate(f, start=1)) for f in want} == got


def test_cycle_composite():
    assert cycle_composite(partial_triangle(), (1, 2, 3)).pairs() == [(1, 1)]
