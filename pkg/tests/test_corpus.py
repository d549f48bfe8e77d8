import random

import pytest
from hypothesis import given, settings, strategies as st

from corrcolor.corpus import (
    GADGETS,
    GRAPH_KINDS,
    CorpusSpec,
    all_partial_injections,
    all_permutations,
    corpus_graphs,
    cycle_graph,
    load_gadget,
    random_assignment,
    random_graph,
    random_precoloring,
    random_target,
    triangle_chain,
)
from corrcolor.correspondence import is_consistent_all_triangles
from corrcolor.planegraph import in_class
from corrcolor.solver import conflicts, target_violations

from oracles import nx_cycles


def test_injection_counts():
    # sum over domain sizes j of C(k,j) * k!/(k-j)!
    assert [len(all_partial_injections(k)) for k in (1, 2, 3)] == [2, 7, 34]
    assert len(all_permutations(3)) == 6
    assert len(set(all_partial_injections(3))) == 34


def test_cycle_graph_rejects_short():
    with pytest.raises(ValueError):
        cycle_graph(2)


def test_triangle_chain_shape():
    g = triangle_chain([1, 3])
    assert g.n == 9 + 2 and len(g.triangles()) == 3 and g.is_connected()
    with pytest.raises(ValueError):
        triangle_chain([0])


@pytest.mark.parametrize("kind", GRAPH_KINDS)
def test_generated_graphs_in_class(kind):
    rng = random.Random(kind)
    for _ in range(25):
        g = random_graph(rng, kind, 16)
        assert g.n <= 16 and g.is_connected()
        assert not nx_cycles(g, 4, 8)


def test_unknown_kind():
    with pytest.raises(ValueError):
        random_graph(random.Random(0), "wheel", 10)


@settings(max_examples=30)
@given(st.integers(0, 10**6))
def test_assignments_are_triangle_consistent(seed):
    rng = random.Random(seed)
    g = random_graph(rng, "grown", 14)
    for mode in ("uniform", "full", "mixed"):
        c = random_assignment(g, 3, rng, mode)
        assert c.matches(g) and is_consistent_all_triangles(c)
        if mode == "full":
            assert all(m.is_full() for _, m in c.items())


def test_precoloring_is_valid():
    g = cycle_graph(9)
    rng = random.Random(2)
    c = random_assignment(g, 3, rng, "full")
    f = random_precoloring(c, g.vertices, rng)
    assert set(f) == set(g.vertices) and not conflicts(c, f)


def test_targets_reproducible():
    spec = CorpusSpec(seed=5)
    a = [random_target(spec, i) for i in range(10)]
    b = [random_target(spec, i) for i in range(10)]
    assert a == b
    other = [random_target(CorpusSpec(seed=6), i) for i in range(10)]
    assert a != other


@pytest.mark.parametrize("seed", range(3))
def test_targets_are_valid(seed):
    spec = CorpusSpec(seed=seed, max_n=14)
    for i in range(40):
        inst = random_target(spec, i)
        assert target_violations(inst) == [], i


def test_corpus_graphs_start_with_gadgets():
    gs = corpus_graphs(CorpusSpec(seed=1), 5)
    assert len(gs) == len(GADGETS) + 5
    assert gs[: len(GADGETS)] == [load_gadget(n)[0] for n in GADGETS]
    assert all(in_class(g) for g in gs)
