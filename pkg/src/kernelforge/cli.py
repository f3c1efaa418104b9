"""Command line front end.

Exit codes: 0 on success, 1 when a contract or invariant is violated (the
diagnostic names it), 2 on usage errors. Reports are deterministic: the same
arguments and seed give byte-identical output. Vertex ids inside reports are
zero-based (file id minus one).
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from . import __version__
from .decomposition import treedepth_exact
from .fii.replacement import kernelize
from .fii.signatures import LONGEST_PATH, VERTEX_COVER
from .fii.table import DEFAULT_LIMITS, RepresentativeTable, build_representative_table
from .generators import KINDS, generate_instance
from .graph import Graph, GraphError, format_pace, parse_graph
from .lp_kernel import lp_kernelize
from .modulator import approx_td_modulator, exact_td_modulator
from .oracles import BudgetExceeded, brute_longest_path, brute_vertex_cover
from .protrusion import decompose
from .shallow_minor import grad_lower_bound, profile

REPORT_SCHEMA = 1
PROBLEMS = {"vc": VERTEX_COVER, "lp": LONGEST_PATH}
GRAD_RANK_CAP = 2


class UsageError(Exception):
    pass


def _read_graph(args) -> Graph:
    if not args.input:
        raise UsageError("--input is required")
    path = Path(args.input)
    if not path.is_file():
        raise UsageError(f"cannot read {path}")
    return parse_graph(path.read_text(), args.graph_format)


def _modulator(args, g: Graph, d: int) -> tuple[int, ...]:
    if args.modulator:
        try:
            ids = [int(x) - 1 for x in args.modulator.replace(",", " ").split()]
        except ValueError:
            raise UsageError("--modulator takes comma separated vertex ids") from None
        missing = [v + 1 for v in ids if v not in g]
        if missing:
            raise UsageError(f"modulator vertices not in graph: {missing}")
        return tuple(sorted(set(ids)))
    return approx_td_modulator(g, d).modulator


def _need(value, flag: str, minimum: int = 0) -> int:
    if value is None:
        raise UsageError(f"{flag} is required")
    if value < minimum:
        raise UsageError(f"{flag} must be >= {minimum}")
    return value


def default_t(g: Graph, d: int) -> int:
    """2 * (greedy grad lower bound at rank min(2^d, cap)) + 1."""
    est = grad_lower_bound(g, min(1 << d, GRAD_RANK_CAP))
    return 2 * math.ceil(est.value) + 1


def _emit(args, report: dict, text_lines: list[str]) -> None:
    report = {"schema": REPORT_SCHEMA, **report}
    if args.format == "json":
        out = json.dumps(report, sort_keys=True, indent=1) + "\n"
    else:
        out = "\n".join(text_lines) + "\n"
    if args.out:
        Path(args.out).write_text(out)
    else:
        sys.stdout.write(out)


def cmd_decompose(args):
    g = _read_graph(args)
    d = _need(args.d, "--d", 1)
    t = args.t if args.t is not None else default_t(g, d)
    s = _modulator(args, g, d)
    pd = decompose(g, s, d, t)
    report = {"command": "decompose", "n": g.n, "m": g.m, "modulator": list(s), **pd.to_dict()}
    lines = [f"n={g.n} m={g.m} d={d} t={t}", f"modulator size {len(s)}",
             f"Y0 size {len(pd.y0)}", f"clusters {len(pd.clusters)}"]
    lines += [f"  cluster {i}: {len(c.vertices)} vertices, boundary {len(c.boundary)}"
              for i, c in enumerate(pd.clusters)]
    return report, lines


def cmd_modulator(args):
    g = _read_graph(args)
    d = _need(args.d, "--d", 1)
    res = exact_td_modulator(g, d) if args.exact else approx_td_modulator(g, d)
    report = {"command": "modulator", "exact": args.exact, **res.to_dict()}
    lines = [f"{'exact' if args.exact else 'approximate'} treedepth-{d} modulator of size {len(res.modulator)}",
             "vertices: " + " ".join(str(v + 1) for v in res.modulator)]
    return report, lines


def _load_table(args, problem: str, d: int) -> RepresentativeTable:
    if args.table:
        path = Path(args.table)
        if not path.is_file():
            raise UsageError(f"cannot read table {path}")
        table = RepresentativeTable.from_json(path.read_text())
        if table.problem != problem:
            raise UsageError(f"table {path} is for {table.problem}")
        return table
    table_d = args.table_d if args.table_d is not None else min(DEFAULT_LIMITS["d"], d + 1)
    return build_representative_table(problem, args.table_t, table_d, args.max_n)


def cmd_kernelize(args):
    g = _read_graph(args)
    d = _need(args.d, "--d", 1)
    problem = PROBLEMS[args.problem]
    t = args.t if args.t is not None else default_t(g, d)
    table = _load_table(args, problem, d)
    s = _modulator(args, g, d)
    g2, delta, rep = kernelize(g, d, t, problem, table, modulator=s)
    report = {"command": "kernelize", "table": table.summary(), **rep.to_dict()}
    lines = [f"{problem}: {g.n} -> {g2.n} vertices, delta {delta}",
             f"modulator {len(s)}, Y0 {rep.y0_size}, clusters {len(rep.clusters)}, "
             f"unreduced {rep.unreduced}"]
    if args.verify:
        oracle = brute_vertex_cover if problem == VERTEX_COVER else brute_longest_path
        before, after = oracle(g), oracle(g2)
        ok = before == after + delta
        report["verify"] = {"before": before, "after": after, "ok": ok}
        lines.append(f"verified: optimum preserved ({before} = {after} + {delta})" if ok
                     else f"verification FAILED: {before} != {after} + {delta}")
        if not ok:
            raise AssertionError("replacement safety: optimum changed")
    if args.graph_out:
        Path(args.graph_out).write_text(format_pace(g2, [f"kernel {problem} d={d} t={t} delta={delta}"]))
    return report, lines


def cmd_kernelize_lp(args):
    g = _read_graph(args)
    d = _need(args.d, "--d", 0)
    s = _modulator(args, g, d) if d > 0 else tuple(g.vertices)
    g2, trace = lp_kernelize(g, s, d)
    report = {"command": "kernelize-lp", "n_before": g.n, "n_after": g2.n, "d": d,
              "modulator": list(s), "rounds": [r.to_dict() for r in trace]}
    lines = [f"longest path kernel: {g.n} -> {g2.n} vertices, modulator {len(s)}"]
    lines += [f"  round depth {r.depth}: kept {len(r.kept_components)} components, "
              f"modulator {r.k} -> {len(r.new_modulator)}" for r in trace]
    if args.verify:
        before, after = brute_longest_path(g), brute_longest_path(g2)
        report["verify"] = {"before": before, "after": after, "ok": before == after}
        if before != after:
            raise AssertionError(f"longest path changed: {before} -> {after}")
        lines.append("verified: longest path preserved")
    if args.graph_out:
        Path(args.graph_out).write_text(format_pace(g2, [f"longest path kernel d={d}"]))
    return report, lines


def cmd_build_table(args):
    problem = PROBLEMS[args.problem]
    t = _need(args.t, "--t", 0)
    d = _need(args.d, "--d", 1)
    table = build_representative_table(problem, t, d, args.max_n)
    if args.out:
        # --out names the table file here; the report goes to stdout
        Path(args.out).write_text(table.to_json())
        args.out = None
    summary = table.summary()
    lines = [f"{problem} table t={t} d={d} max_n={args.max_n}: {len(table.entries)} classes",
             "stabilized: " + " ".join(f"t={b}:{'yes' if s else 'no'}" for b, s in summary["stabilized"].items())]
    return {"command": "build-table", **summary}, lines


def cmd_profile(args):
    g = _read_graph(args)
    ranks = [int(r) for r in args.ranks.split(",")]
    prof = profile(g, ranks)
    lines = [f"n={prof['n']} m={prof['m']} degeneracy={prof['degeneracy']} cliques={prof['cliques']}"]
    lines += [f"  grad rank {e['rank']}: {e['value']} ({'exact' if e['exact'] else 'lower bound'})"
              for e in prof["grad"]]
    return {"command": "profile", **prof}, lines


def cmd_oracle(args):
    g = _read_graph(args)
    if args.problem == "vc":
        value = brute_vertex_cover(g)
    elif args.problem == "lp":
        value = brute_longest_path(g)
    else:
        value = treedepth_exact(g).height
    return {"command": "oracle", "problem": args.problem, "value": value}, [f"{args.problem}: {value}"]


def cmd_gen(args):
    params = {}
    for item in args.param or []:
        key, sep, val = item.partition("=")
        if not sep:
            raise UsageError(f"--param expects key=value, got {item!r}")
        params[key] = val
    inst = generate_instance(args.kind, params, args.seed)
    text = format_pace(inst.graph, inst.comments())
    if args.graph_out:
        Path(args.graph_out).write_text(text)
    report = {"command": "gen", "kind": inst.kind, "params": inst.params, "n": inst.graph.n,
              "m": inst.graph.m, "modulator": list(inst.modulator), "d": inst.d}
    lines = [f"{inst.kind}: n={inst.graph.n} m={inst.graph.m} planted modulator {len(inst.modulator)} (d={inst.d})"]
    if not args.graph_out and args.format == "text" and not args.out:
        lines = text.rstrip("\n").split("\n")
    return report, lines


COMMANDS = {
    "decompose": cmd_decompose,
    "modulator": cmd_modulator,
    "kernelize": cmd_kernelize,
    "kernelize-lp": cmd_kernelize_lp,
    "build-table": cmd_build_table,
    "profile": cmd_profile,
    "oracle": cmd_oracle,
    "gen": cmd_gen,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", help="graph file")
    common.add_argument("--graph-format", default="pace-gr", choices=["pace-gr", "edge-list"])
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("--format", default="text", choices=["text", "json"], help="report format")
    common.add_argument("--d", type=int, help="treedepth bound")
    common.add_argument("--t", type=int, help="protrusion parameter (default 2*grad+1)")
    common.add_argument("--modulator", help="comma separated 1-based ids (default: approximate)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--threads", type=int, default=1, help="worker cap (work runs in one thread)")

    parser = argparse.ArgumentParser(prog="kernelforge", description="Kernels for graphs with a treedepth modulator.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("decompose", parents=[common], help="protrusion decomposition")
    p = sub.add_parser("modulator", parents=[common], help="treedepth modulator")
    p.add_argument("--exact", action="store_true", help="exact search (small graphs)")

    for name in ("kernelize", "kernelize-lp"):
        p = sub.add_parser(name, parents=[common],
                           help="protrusion replacement kernel" if name == "kernelize" else "longest path kernel")
        p.add_argument("--verify", action="store_true", help="cross-check with a brute-force oracle")
        p.add_argument("--graph-out", help="write the reduced graph (PACE format)")
        if name == "kernelize":
            p.add_argument("--problem", choices=sorted(PROBLEMS), default="vc")
            p.add_argument("--table", help="representative table file")
            p.add_argument("--table-t", type=int, default=3)
            p.add_argument("--table-d", type=int)
            p.add_argument("--max-n", type=int, default=6)

    p = sub.add_parser("build-table", parents=[common], help="enumerate a representative table")
    p.add_argument("--problem", choices=sorted(PROBLEMS), required=True)
    p.add_argument("--max-n", type=int, default=6)

    p = sub.add_parser("profile", parents=[common], help="degeneracy, cliques and grad estimates")
    p.add_argument("--ranks", default="0,1")

    p = sub.add_parser("oracle", parents=[common], help="brute-force optimum")
    p.add_argument("--problem", choices=["vc", "lp", "td"], required=True)

    p = sub.add_parser("gen", parents=[common], help="generate an instance")
    p.add_argument("--kind", choices=KINDS, required=True)
    p.add_argument("--param", action="append", help="key=value, repeatable")
    p.add_argument("--graph-out", help="write the graph here")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.threads < 1:
        print("error: --threads must be >= 1", file=sys.stderr)
        return 2
    try:
        report, lines = COMMANDS[args.command](args)
        _emit(args, report, lines)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (AssertionError, GraphError, BudgetExceeded, ValueError) as exc:
        print(f"contract violation: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
