import random

import pytest
from hypothesis import given, strategies as st

from corrcolor.corpus import all_partial_injections, cycle_graph
from corrcolor.correspondence import (
    CorrespondenceAssignment,
    PartialInjection,
    compose,
    inconsistency_witness,
    is_consistent_all_triangles,
    is_consistent_global,
    is_consistent_on,
    is_full,
    is_straight,
    triangle_walks,
    walk_map,
)
from corrcolor.planegraph import PlaneGraph

from helpers import edgeless, random_maps, random_plane_graph
from oracles import consistent_by_short_walks, consistent_by_walks, raw_maps

P = PartialInjection.from_pairs
TRIANGLE = PlaneGraph({1: [2, 3], 2: [3, 1], 3: [1, 2]})
pis3 = st.sampled_from(all_partial_injections(3))


def partial_triangle():
    # C12: 1->1, 2->2; C23: 1->1, 3->3; C31: 1->1, 2->3
    return CorrespondenceAssignment(3, {
        (1, 2): P(3, [(1, 1), (2, 2)]),
        (2, 3): P(3, [(1, 1), (3, 3)]),
        (1, 3): P(3, [(1, 1), (2, 3)]).inverse(),
    })


def test_rejects_non_injective():
    with pytest.raises(ValueError):
        P(3, [(1, 2), (2, 2)])
    with pytest.raises(ValueError):
        P(3, [(1, 2), (1, 3)])
    with pytest.raises(ValueError):
        P(3, [(1, 4)])


def test_compose_identity_and_empty():
    f = P(3, [(1, 2), (3, 1)])
    assert compose(PartialInjection.identity(3), f) == f
    assert compose(PartialInjection.empty(3), f) == PartialInjection.empty(3)


def test_compose_mismatched_k():
    with pytest.raises(ValueError):
        compose(PartialInjection.identity(2), PartialInjection.identity(3))


def test_compose_partial_triangle():
    c = partial_triangle()
    assert compose(c[1, 2], c[2, 3], c[3, 1]).pairs() == [(1, 1)]


@given(pis3, pis3)
def test_compose_definition(a, b):
    ab = compose(a, b)
    assert ab.domain == {x for x in a.domain if a(x) in b.domain}
    assert all(ab(x) == b(a(x)) for x in ab.domain)


@given(pis3, pis3, pis3)
def test_compose_associative(a, b, c):
    assert compose(compose(a, b), c) == compose(a, compose(b, c))


@given(pis3)
def test_inverse_involution(a):
    assert a.inverse().inverse() == a


def test_reverse_direction_is_inverse():
    c = partial_triangle()
    assert c[3, 1].pairs() == [(1, 1), (2, 3)]
    assert c[1, 3] == c[3, 1].inverse()


def test_walk_map_examples():
    c = partial_triangle()
    assert walk_map(c, [1, 2, 3, 1]).pairs() == [(1, 1)]
    assert walk_map(c, [1, 2]) == c[1, 2]
    assert walk_map(c, [2]) == PartialInjection.identity(3)
    u = CorrespondenceAssignment.uniform(cycle_graph(9), 3)
    assert walk_map(u, [1, 2, 3, 4, 3, 2, 1, 9]) == PartialInjection.identity(3)


def test_walk_map_rejects_non_walk():
    with pytest.raises(ValueError):
        walk_map(partial_triangle(), [1, 2, 2])


@given(st.integers(0, 10**6))
def test_walk_concat_and_reverse(seed):
    rng = random.Random(seed)
    g = random_plane_graph(rng, 8)
    c = random_maps(g, 3, rng)
    w = [rng.choice(list(g.vertices))]
    for _ in range(rng.randint(1, 8)):
        w.append(rng.choice(sorted(g.neighbors(w[-1]))))
    cut = rng.randrange(len(w))
    assert walk_map(c, w) == compose(walk_map(c, w[: cut + 1]), walk_map(c, w[cut:]))
    assert walk_map(c, w[::-1]) == walk_map(c, w).inverse()


def test_consistent_on_examples():
    assert is_consistent_on(partial_triangle(), [1, 2, 3, 1])
    c = CorrespondenceAssignment(3, {(1, 2): P(3, [(1, 1)]), (2, 3): P(3, [(2, 2)]),
                                     (1, 3): P(3, [(2, 1)]).inverse()})
    assert is_consistent_on(c, [1, 2, 3, 1])
    assert not is_consistent_on(c, [2, 3, 1, 2])
    with pytest.raises(ValueError):
        is_consistent_on(c, [1, 2, 3])


def test_triangle_walk_count():
    assert len(list(triangle_walks(partial_triangle()))) == 6


def test_all_triangles_examples():
    assert is_consistent_all_triangles(CorrespondenceAssignment.uniform(cycle_graph(9), 3, P(3, [(1, 2)])))
    assert is_consistent_all_triangles(partial_triangle())
    swap = CorrespondenceAssignment(3, {(1, 2): PartialInjection.identity(3), (2, 3): PartialInjection.identity(3),
                                        (1, 3): P(3, [(1, 2), (2, 1), (3, 3)]).inverse()})
    assert not is_consistent_all_triangles(swap)


def test_global_examples():
    c4 = cycle_graph(4)
    maps = {e: PartialInjection.identity(2) for e in c4.edges()}
    maps[(1, 4)] = P(2, [(1, 2), (2, 1)])
    c = CorrespondenceAssignment(2, maps)
    assert not is_consistent_global(c)
    v, a, b = inconsistency_witness(c)
    assert a != b
    assert is_consistent_global(CorrespondenceAssignment(3, {}))
    assert is_consistent_global(CorrespondenceAssignment.uniform(edgeless(4), 3))


@given(st.integers(0, 10**6))
def test_global_matches_walk_closure(seed):
    rng = random.Random(seed)
    g = random_plane_graph(rng, 8)
    k = rng.randint(1, 3)
    c = random_maps(g, k, rng)
    if rng.random() < 0.5:
        # bias toward consistent inputs: straight maps with random domains
        c = CorrespondenceAssignment(k, {e: P(k, [(x, x) for x in range(1, k + 1) if rng.random() < 0.7])
                                         for e in g.edges()})
    assert is_consistent_global(c) == consistent_by_walks(g.n, raw_maps(c), k)


@given(st.integers(0, 10**6))
def test_global_matches_short_walk_enumeration(seed):
    rng = random.Random(seed)
    g = random_plane_graph(rng, 5, extra=2)
    c = random_maps(g, 2, rng)
    assert is_consistent_global(c) == consistent_by_short_walks(g.n, raw_maps(c), 2, 2 * g.n)


@given(st.integers(0, 10**6))
def test_global_implies_every_closed_walk(seed):
    rng = random.Random(seed)
    g = random_plane_graph(rng, 8)
    c = CorrespondenceAssignment(3, {e: P(3, [(x, x) for x in range(1, 4) if rng.random() < 0.6])
                                     for e in g.edges()})
    assert is_consistent_global(c)
    for _ in range(10):
        w = [rng.choice(list(g.vertices))]
        for _ in range(rng.randint(2, 10)):
            w.append(rng.choice(sorted(g.neighbors(w[-1]))))
        w.append(w[0]) if w[0] in g.neighbors(w[-1]) else None
        if w[0] == w[-1]:
            assert is_consistent_on(c, w)


def test_straight_and_full():
    c = CorrespondenceAssignment(3, {(1, 2): PartialInjection.identity(3), (2, 3): PartialInjection.empty(3),
                                     (1, 3): P(3, [(1, 1), (2, 3)])})
    assert is_straight(c, 1, 2) and is_full(c, 1, 2)
    assert is_straight(c, 2, 3) and not is_full(c, 2, 3)
    assert not is_straight(c, 1, 3) and not is_full(c, 1, 3)
    assert is_straight(c, 2, 1)
    with pytest.raises(KeyError):
        is_straight(c, 1, 4)


def test_assignment_rejects_mixed_k():
    with pytest.raises(ValueError):
        CorrespondenceAssignment(3, {(1, 2): PartialInjection.identity(2)})


def test_total_domain_and_matches():
    c = partial_triangle()
    assert c.total_domain() == 6
    assert c.matches(TRIANGLE)
    assert not c.matches(cycle_graph(4))
