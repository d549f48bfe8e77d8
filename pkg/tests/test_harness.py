import random

import pytest

from corrcolor.corpus import CorpusSpec, cycle_graph, load_gadget, random_assignment, random_precoloring
from corrcolor.correspondence import CorrespondenceAssignment
from corrcolor.harness import run_trial, verify_theorem
from corrcolor.solver import TargetInstance, solve, target_violations


def test_small_run_passes():
    summary = verify_theorem(CorpusSpec(seed=2, max_n=12), 40)
    assert summary.ok and summary.sat == len(summary.targets) == 40
    assert "verdict: PASS" in summary.text()
    assert summary.tsv().count("\n") == 41


def test_reproducible_and_job_independent():
    spec = CorpusSpec(seed=9, max_n=12)
    a = verify_theorem(spec, 24)
    b = verify_theorem(spec, 24, jobs=2)
    assert a.results == b.results


def test_trial_fields():
    r = run_trial(CorpusSpec(seed=0, max_n=10), 3)
    assert r.valid and r.sat and r.agrees and r.dump == ""


def test_c5_is_not_a_target():
    g = cycle_graph(5)
    inst = TargetInstance(g, CorrespondenceAssignment.uniform(g, 3))
    assert "cycle-4-8" in {v.name for v in target_violations(inst)}


def test_mode_and_kind_restriction():
    spec = CorpusSpec(kinds=("cycle",), seed=4, max_n=13, mode="uniform")
    summary = verify_theorem(spec, 20)
    assert summary.ok and {r.kind for r in summary.results} == {"cycle"}


@pytest.mark.parametrize("name", ["triangle", "c9", "c13", "tetrad1"])
def test_curated_gadgets_always_extend(name):
    g, _ = load_gadget(name)
    for seed in range(100):
        rng = random.Random(f"{name}:{seed}")
        c = random_assignment(g, 3, rng, "mixed")
        boundaries = [frozenset()] + ([g.outer_vertices] if len(g.outer_vertices) <= 12 else [])
        for s in boundaries:
            f0 = random_precoloring(c, s, rng)
            inst = TargetInstance(g, c, s, f0)
            assert target_violations(inst) == []
            assert solve(inst, as_target=True) is not None
