"""Empirical check of the 3-colour extension theorem on a generated corpus.

Every generated target is validated, solved, and (when small enough)
cross-checked against brute force.  An unsolvable valid target would be a
counterexample; it is kept verbatim in the summary.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .corpus import CorpusSpec, random_target
from .formats import emit_ca, emit_col, emit_pg
from .solver import TargetInstance, count_colorings, solve, target_violations

BRUTE_FORCE_FREE = 10


@dataclass(frozen=True)
class TrialResult:
    index: int
    kind: str
    n: int
    s_size: int
    valid: bool
    sat: bool | None
    oracle: bool | None  # brute-force verdict, None when skipped
    problems: tuple[str, ...] = ()
    dump: str = ""

    @property
    def agrees(self) -> bool:
        return self.oracle is None or self.oracle == self.sat


@dataclass
class Summary:
    spec: CorpusSpec
    results: list[TrialResult] = field(default_factory=list)

    @property
    def targets(self) -> list[TrialResult]:
        return [r for r in self.results if r.valid]

    @property
    def sat(self) -> int:
        return sum(1 for r in self.targets if r.sat)

    @property
    def unsat(self) -> list[TrialResult]:
        return [r for r in self.targets if not r.sat]

    @property
    def disagreements(self) -> list[TrialResult]:
        return [r for r in self.targets if not r.agrees]

    @property
    def ok(self) -> bool:
        return bool(self.targets) and not self.unsat and not self.disagreements

    def text(self) -> str:
        t = len(self.targets)
        checked = sum(1 for r in self.targets if r.oracle is not None)
        lines = [
            f"seed {self.spec.seed}, max_n {self.spec.max_n}, mode {self.spec.mode}",
            f"targets: {t} (rejected as non-targets: {len(self.results) - t})",
            f"sat: {self.sat}/{t}",
            f"brute-force checked: {checked}, disagreements: {len(self.disagreements)}",
            f"verdict: {'PASS' if self.ok else 'FAIL'}",
        ]
        for r in self.unsat:
            lines.append(f"# falsification candidate {r.index}\n{r.dump}")
        return "\n".join(lines) + "\n"

    def tsv(self) -> str:
        rows = ["index\tkind\tn\ts\tvalid\tsat\toracle"]
        for r in self.results:
            rows.append("\t".join(str(x) for x in (r.index, r.kind, r.n, r.s_size, int(r.valid),
                                                   "" if r.sat is None else int(r.sat),
                                                   "" if r.oracle is None else int(r.oracle))))
        return "\n".join(rows) + "\n"


def dump_instance(inst: TargetInstance) -> str:
    return emit_pg(inst.g, inst.s) + emit_ca(inst.c) + emit_col(inst.f0)


def run_trial(spec: CorpusSpec, index: int) -> TrialResult:
    inst = random_target(spec, index)
    kind = spec.kinds[index % len(spec.kinds)]
    problems = target_violations(inst)
    if problems:
        return TrialResult(index, kind, inst.g.n, len(inst.s), False, None, None,
                           tuple(str(p) for p in problems))
    sat = solve(inst, as_target=True) is not None
    oracle = None
    if inst.g.n - len(inst.s) <= BRUTE_FORCE_FREE:
        oracle = count_colorings(inst, max_free=BRUTE_FORCE_FREE) > 0
    dump = "" if sat and oracle is not False else dump_instance(inst)
    return TrialResult(index, kind, inst.g.n, len(inst.s), True, sat, oracle, dump=dump)


def _trial_args(args: tuple[CorpusSpec, int]) -> TrialResult:
    return run_trial(*args)


def verify_theorem(spec: CorpusSpec, trials: int, jobs: int = 1) -> Summary:
    """Run ``trials`` generated instances; results are ordered by index whatever ``jobs`` is."""
    work = [(spec, i) for i in range(trials)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_trial_args, work, chunksize=16))
    else:
        results = [_trial_args(w) for w in work]
    return Summary(spec, results)
