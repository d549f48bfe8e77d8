"""``corrsolve``: command-line front end.

Exit codes: 0 success, 1 negative verdict (unsatisfiable, inconsistent,
rejected, violated), 2 invalid input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import formats
from .configurations import (
    ExtensionError,
    ReductionError,
    Tetrad,
    check_basic,
    check_edge_fullness,
    extend_coloring,
    find_tetrads,
    reduce_tetrad,
    tetrad_at,
)
from .correspondence import inconsistency_witness, inconsistent_triangle_walks
from .corpus import GRAPH_KINDS, CorpusSpec, random_target
from .discharging import audit_graph, transfers_tsv
from .harness import verify_theorem
from .planegraph import shortest_cycle_in_range
from .solver import InvalidInstance, TargetInstance, conflicts, solve
from .transforms import Relabeling, StraightenError, from_lists, straighten, to_lists

OK, NEGATIVE, INVALID = 0, 1, 2


class UsageError(Exception):
    pass


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _ints(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(",", " ").split()]
    except ValueError:
        raise UsageError(f"expected a comma separated list of integers, got {text!r}") from None


def _load(args, need_assignment: bool = True) -> TargetInstance:
    g, s = formats.read(args.graph, formats.parse_pg)
    c = formats.read(args.assignment, formats.parse_ca) if need_assignment else None
    f0 = formats.read(args.precolor, formats.parse_col) if getattr(args, "precolor", None) else {}
    if s is None:
        s = frozenset(f0)
    return TargetInstance(g, c, s, f0)


def _report_invalid(exc: InvalidInstance) -> int:
    for v in exc.violations:
        print(f"invalid: {v}", file=sys.stderr)
    return INVALID


# -- subcommands -------------------------------------------------------------


def cmd_check(args) -> int:
    g, _ = formats.read(args.graph, formats.parse_pg)
    good = True
    cyc = shortest_cycle_in_range(g, 4, 8)
    print(f"class: {'yes' if cyc is None else 'no'}" + (f" (cycle {' '.join(map(str, cyc))})" if cyc else ""))
    good &= cyc is None
    if args.assignment:
        c = formats.read(args.assignment, formats.parse_ca)
        if not c.matches(g):
            raise UsageError("assignment edges differ from graph edges")
        bad = inconsistent_triangle_walks(c)
        print(f"triangle-consistent: {'yes' if not bad else 'no'}" + (f" (walk {bad[0]})" if bad else ""))
        wit = inconsistency_witness(c)
        print(f"consistent: {'yes' if wit is None else 'no'}"
              + (f" (({wit[0]},{wit[1]}) ~ ({wit[0]},{wit[2]}))" if wit else ""))
        good &= not bad and wit is None
    return OK if good else NEGATIVE


def cmd_check_coloring(args) -> int:
    inst = _load(args)
    f = formats.read(args.coloring, formats.parse_col)
    missing = sorted(set(inst.g.vertices) - set(f))
    bad_range = sorted(v for v, col in f.items() if not 1 <= col <= inst.k)
    clash = conflicts(inst.c, f)
    off = sorted(v for v, col in inst.f0.items() if f.get(v) != col)
    for label, items in (("uncoloured", missing), ("out of range", bad_range),
                         ("conflicting edges", clash), ("differs from precolouring", off)):
        if items:
            print(f"{label}: {items}")
    ok = not (missing or bad_range or clash or off)
    print("valid" if ok else "invalid")
    return OK if ok else NEGATIVE


def cmd_solve(args) -> int:
    inst = _load(args)
    try:
        f = solve(inst, as_target=args.as_target)
    except InvalidInstance as exc:
        return _report_invalid(exc)
    if f is None:
        print("UNSAT")
        return NEGATIVE
    _write(args.out, formats.emit_col(f))
    if args.out and args.out != "-":
        print("SAT")
    return OK


def _edge_list(text: str) -> list[tuple[int, int]]:
    out = []
    for tok in text.replace(" ", "").split(","):
        if not tok:
            continue
        a, sep, b = tok.partition("-")
        if not sep:
            raise UsageError(f"bad edge {tok!r}, expected u-v")
        out.append((int(a), int(b)))
    return out


def cmd_straighten(args) -> int:
    g, _ = formats.read(args.graph, formats.parse_pg)
    c = formats.read(args.assignment, formats.parse_ca)
    edges = _edge_list(args.edges)
    for u, v in edges:
        if not g.has_edge(u, v):
            raise UsageError(f"{u}-{v} is not an edge of the graph")
    try:
        c2, r = straighten(c, edges)
    except StraightenError as exc:
        print(f"rejected: {exc} (cycle {' '.join(map(str, exc.cycle))})")
        return NEGATIVE
    _write(args.out, formats.emit_ca(c2))
    if args.relabeling:
        _write(args.relabeling, formats.emit_relabeling(r))
    return OK


def cmd_convert(args) -> int:
    g, _ = formats.read(args.graph, formats.parse_pg)
    if args.from_lists:
        lists = formats.read(args.from_lists, formats.parse_la)
        try:
            c, q = from_lists(g, lists)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        _write(args.out, formats.emit_ca(c))
        if args.map:
            _write(args.map, formats.emit_labelmap("q", q))
        return OK
    c = formats.read(args.to_lists, formats.parse_ca)
    try:
        lists, ell = to_lists(g, c)
    except ValueError as exc:
        print(f"rejected: {exc}")
        return NEGATIVE
    _write(args.out, formats.emit_la(lists))
    if args.map:
        per_vertex: dict[int, dict[int, int]] = {}
        for (v, col), lab in ell.items():
            per_vertex.setdefault(v, {})[col] = lab
        _write(args.map, formats.emit_labelmap("ell", per_vertex))
    return OK


def cmd_configs(args) -> int:
    inst = _load(args)
    lines = [str(fnd) for fnd in check_basic(inst).values()]
    issues = check_edge_fullness(inst)
    lines += [f"fullness: {i}" for i in issues] or ["fullness: no issues"]
    tets = find_tetrads(inst.g, inst.s)
    for t in tets:
        lines.append(f"tetrad {','.join(map(str, t.path))} x1={t.x1} x4={t.x4} y1={t.y1} y4={t.y4} "
                     f"{'touches S' if t.touches_s else 'disjoint from S'}")
    if not tets:
        lines.append("tetrads: none")
    text = "\n".join(lines) + "\n"
    _write(args.report, text)
    failed = (any(not f.passed for f in check_basic(inst).values()) or issues
              or any(not t.touches_s for t in tets))
    return NEGATIVE if failed else OK


def _find_tetrad(inst: TargetInstance, spec: str) -> Tetrad:
    path = tuple(_ints(spec))
    if len(path) != 4:
        raise UsageError("--tetrad needs four vertices")
    for t in find_tetrads(inst.g, inst.s):
        if t.path == path:
            return t
        if t.path == path[::-1]:
            return t.reversed()
    raise UsageError(f"{','.join(map(str, path))} is not a tetrad")


def cmd_reduce(args) -> int:
    inst = _load(args)
    t = _find_tetrad(inst, args.tetrad)
    try:
        red = reduce_tetrad(inst, t)
    except ReductionError as exc:
        print(f"rejected: {exc}")
        return NEGATIVE
    _write(args.out_graph, formats.emit_pg(red.reduced.g, red.reduced.s))
    _write(args.out_assignment, formats.emit_ca(red.reduced.c))
    if args.out_precolor:
        _write(args.out_precolor, formats.emit_col(red.reduced.f0))
    _write(args.script, json.dumps(red.script(), indent=1) + "\n")
    return OK


def cmd_extend(args) -> int:
    inst = _load(args)
    try:
        script = json.loads(Path(args.script).read_text())
        path = tuple(script["tetrad"])
        vmap = {int(k): v for k, v in script["vertex_map"].items()}
        relab = Relabeling(script["k"], {int(v): tuple(p) for v, p in script["relabeling"].items()})
    except (KeyError, ValueError, TypeError) as exc:
        raise UsageError(f"bad extension script: {exc}") from None
    t = tetrad_at(inst.g, path, script.get("face", -1), inst.s)
    if t is None:
        raise UsageError("script tetrad is not a tetrad of the graph")
    f_red = formats.read(args.coloring, formats.parse_col)
    try:
        f = extend_coloring(inst, t, vmap, relab, f_red)
    except (ExtensionError, KeyError) as exc:
        print(f"extension failed: {exc}")
        return NEGATIVE
    _write(args.out, formats.emit_col(f))
    return OK


def cmd_audit(args) -> int:
    g, s = formats.read(args.graph, formats.parse_pg)
    if args.S is not None:
        s = frozenset(_ints(args.S))
    s = s or frozenset()
    try:
        _, final, rep = audit_graph(g, s)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _write(args.out, rep.render() + "\n")
    if args.log:
        _write(args.log, transfers_tsv(final))
    return OK if rep.ok else NEGATIVE


def cmd_verify(args) -> int:
    spec = CorpusSpec(kinds=tuple(args.kinds) if args.kinds else GRAPH_KINDS, max_n=args.max_n,
                      seed=args.seed, mode=args.mode)
    summary = verify_theorem(spec, args.trials, jobs=args.jobs)
    sys.stdout.write(summary.text())
    if args.tsv:
        _write(args.tsv, summary.tsv())
    return OK if summary.ok else NEGATIVE


def cmd_generate(args) -> int:
    spec = CorpusSpec(kinds=(args.kind,), max_n=args.max_n, seed=args.seed, mode=args.mode)
    inst = random_target(spec, args.index)
    prefix = args.out_prefix
    Path(f"{prefix}.pg").write_text(formats.emit_pg(inst.g, inst.s))
    Path(f"{prefix}.ca").write_text(formats.emit_ca(inst.c))
    Path(f"{prefix}.col").write_text(formats.emit_col(inst.f0))
    print(f"wrote {prefix}.pg, {prefix}.ca, {prefix}.col")
    return OK


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="corrsolve", description="Correspondence colouring of plane graphs.")
    sub = p.add_subparsers(dest="command", required=True)

    def instance(sp, assignment=True, precolor=True):
        sp.add_argument("--graph", required=True, help=".pg file")
        if assignment:
            sp.add_argument("--assignment", required=True, help=".ca file")
        if precolor:
            sp.add_argument("--precolor", help=".col precolouring of S")

    sp = sub.add_parser("check", help="class membership and consistency")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--assignment")
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("check-coloring", help="validate a colouring")
    instance(sp)
    sp.add_argument("--coloring", required=True)
    sp.set_defaults(func=cmd_check_coloring)

    sp = sub.add_parser("solve", help="extend the precolouring")
    instance(sp)
    sp.add_argument("--as-target", action="store_true", help="also require the theorem's hypotheses")
    sp.add_argument("--out", help="write the colouring here (default stdout)")
    sp.set_defaults(func=cmd_solve)

    sp = sub.add_parser("straighten", help="make chosen edges straight")
    instance(sp, precolor=False)
    sp.add_argument("--edges", required=True, help="comma separated u-v list")
    sp.add_argument("--out")
    sp.add_argument("--relabeling", help="write the colour renaming here")
    sp.set_defaults(func=cmd_straighten)

    sp = sub.add_parser("convert", help="between list and correspondence assignments")
    sp.add_argument("--graph", required=True)
    grp = sp.add_mutually_exclusive_group(required=True)
    grp.add_argument("--from-lists", help=".la input")
    grp.add_argument("--to-lists", help=".ca input")
    sp.add_argument("--out")
    sp.add_argument("--map", help="sidecar label map")
    sp.set_defaults(func=cmd_convert)

    sp = sub.add_parser("configs", help="structural predicates and tetrads")
    instance(sp)
    sp.add_argument("--report")
    sp.set_defaults(func=cmd_configs)

    sp = sub.add_parser("reduce", help="tetrad reduction")
    instance(sp)
    sp.add_argument("--tetrad", required=True, help="v1,v2,v3,v4")
    sp.add_argument("--out-graph", required=True)
    sp.add_argument("--out-assignment", required=True)
    sp.add_argument("--out-precolor")
    sp.add_argument("--script", required=True, help="extension script (JSON)")
    sp.set_defaults(func=cmd_reduce)

    sp = sub.add_parser("extend", help="lift a colouring of a reduced instance")
    instance(sp)
    sp.add_argument("--script", required=True)
    sp.add_argument("--coloring", required=True, help="colouring of the reduced instance")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_extend)

    sp = sub.add_parser("audit", help="discharging audit")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--S", help="boundary set, overrides the file")
    sp.add_argument("--out")
    sp.add_argument("--log", help="transfer log (TSV)")
    sp.set_defaults(func=cmd_audit)

    sp = sub.add_parser("verify", help="run the theorem harness")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--max-n", type=int, default=16)
    sp.add_argument("--trials", type=int, default=500)
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--mode", choices=("uniform", "full", "mixed"), default="mixed")
    sp.add_argument("--kinds", nargs="*", choices=GRAPH_KINDS)
    sp.add_argument("--tsv")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("generate", help="write one generated target")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--index", type=int, default=0)
    sp.add_argument("--max-n", type=int, default=16)
    sp.add_argument("--kind", choices=GRAPH_KINDS, default="grown")
    sp.add_argument("--mode", choices=("uniform", "full", "mixed"), default="mixed")
    sp.add_argument("--out-prefix", required=True)
    sp.set_defaults(func=cmd_generate)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except formats.FormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
    except (UsageError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
    return INVALID


if __name__ == "__main__":
    sys.exit(main())
