"""Command-line front end for the reduction, the solver, and the certifiers.

Exit codes are part of the contract and kept disjoint on purpose:

  0  success (SAT for solve, AGREE for roundtrip, pass for certify-gadget)
  1  definitive negative (UNSAT, invalid coloring, behavioral certification
     failure)
  2  error: unreadable or malformed input, structural certification failure
  3  solver node budget exhausted; explicitly not a verdict
  4  roundtrip disagreement between the two decision procedures

Batch commands (roundtrip, certify-gadget) accept several input files and a
``--jobs`` flag; items run in separate worker processes and results print in
input order, so output stays byte-identical regardless of parallelism.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import replace
from multiprocessing import Pool
from pathlib import Path

from .cnf import encode_cnf
from .coloring import parse_coloring, solve, verify, write_coloring
from .config import RunConfig, load_config
from .dot import export_dot
from .gadgets import certify, parse_gadget
from .graph import GraphFormatError, parse_graph, structural_report, write_graph
from .reduction import (NaeFormatError, compile_instance, parse_nae,
                        roundtrip_report, skeleton_pins, write_provenance)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_ERROR = 2
EXIT_BUDGET = 3
EXIT_DISAGREE = 4


def _fail(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return EXIT_ERROR


def _read(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def _config_from(args: argparse.Namespace) -> RunConfig:
    cfg = load_config(args.config) if args.config else RunConfig()
    overrides = {}
    if args.node_budget is not None:
        overrides["solve_node_budget"] = args.node_budget
    if args.edge_guard is not None:
        overrides["brute_force_edge_guard"] = args.edge_guard
    if args.var_guard is not None:
        overrides["nae_var_guard"] = args.var_guard
    if args.data_dir is not None:
        overrides["gadget_data_dir"] = args.data_dir
    if args.witnesses:
        overrides["report_witnesses"] = True
    if args.no_details:
        overrides["cert_details"] = False
    return replace(cfg, **overrides) if overrides else cfg


def cmd_reduce(args: argparse.Namespace, cfg: RunConfig) -> int:
    try:
        inst = parse_nae(_read(args.nae))
    except NaeFormatError as exc:
        return _fail(str(exc))
    except OSError as exc:
        return _fail(str(exc))
    art = compile_instance(inst)
    hints_path = (Path(args.hints_out) if args.hints_out
                  else Path(args.graph_out).with_suffix(".hints"))
    Path(args.graph_out).write_text(write_graph(art.graph), encoding="utf-8")
    Path(args.prov_out).write_text(write_provenance(art), encoding="utf-8")
    hints_path.write_text(write_coloring(skeleton_pins(art)), encoding="utf-8")
    counts = art.instance_counts()
    print(f"fanout={counts['fanout']} variable={counts['variable']} "
          f"clause={counts['clause']}")
    print(f"vertices={len(art.graph.vertices)} edges={len(art.graph.edges)}")
    return EXIT_OK


def cmd_solve(args: argparse.Namespace, cfg: RunConfig) -> int:
    try:
        g = parse_graph(_read(args.graph))
        hints = parse_coloring(_read(args.hints)) if args.hints else None
    except (GraphFormatError, OSError) as exc:
        return _fail(str(exc))
    try:
        res = solve(g, args.k, hints=hints, node_budget=cfg.solve_node_budget)
    except ValueError as exc:
        return _fail(str(exc))
    if res.status == "budget":
        print(f"budget exhausted after {res.nodes} nodes", file=sys.stderr)
        return EXIT_BUDGET
    if res.status == "unsat":
        print(f"unsat after {res.nodes} nodes", file=sys.stderr)
        return EXIT_NEGATIVE
    check = verify(g, res.coloring, args.k)
    if not check.valid:
        return _fail("solver produced an invalid coloring (bug)")
    text = write_coloring(res.coloring)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace, cfg: RunConfig) -> int:
    try:
        g = parse_graph(_read(args.graph))
        coloring = parse_coloring(_read(args.coloring))
        res = verify(g, coloring, args.k)
    except (GraphFormatError, OSError, ValueError) as exc:
        return _fail(str(exc))
    if res.valid:
        print("valid")
        return EXIT_OK
    print(f"invalid: {len(res.violations)} conflicting pairs, "
          f"{len(res.uncolored)} uncolored edges, "
          f"{len(res.overpalette)} labels over palette")
    if cfg.report_witnesses:
        for (e1, e2) in res.violations:
            print(f"conflict {e1[0]} {e1[1]} / {e2[0]} {e2[1]}")
    return EXIT_NEGATIVE


def cmd_props(args: argparse.Namespace, cfg: RunConfig) -> int:
    try:
        g = parse_graph(_read(args.graph))
    except (GraphFormatError, OSError) as exc:
        return _fail(str(exc))
    rep = structural_report(g)
    sys.stdout.write(rep.as_text())
    if cfg.report_witnesses:
        if rep.partition is not None:
            ones = sorted(v for v, c in rep.partition.items() if c == 1)
            print("partition-class-1 " + " ".join(ones))
        print("peel-order " + " ".join(rep.peel_order))
    return EXIT_OK


def _certify_one(item: tuple[str, bool]) -> tuple[int, str]:
    path, details = item
    try:
        gd = parse_gadget(_read(path))
    except (GraphFormatError, OSError) as exc:
        return EXIT_ERROR, f"error: {exc}\n"
    rep = certify(gd)
    if rep.passed:
        lines = [f"passed, {rep.scenarios_checked}/{rep.scenarios_checked} "
                 "scenarios"]
        code = EXIT_OK
    else:
        kind = rep.failure_kind or "behavioral"
        lines = [f"failed ({kind}) after {rep.scenarios_checked} scenarios"]
        if rep.counterexample:
            lines.append(f"counterexample {rep.counterexample}")
        code = EXIT_ERROR if kind == "structural" else EXIT_NEGATIVE
    if details:
        lines.extend(f"detail {d}" for d in rep.details)
    return code, "\n".join(lines) + "\n"


def _roundtrip_one(item: tuple[str, int | None, int]) -> tuple[int, str]:
    path, budget, guard = item
    try:
        inst = parse_nae(_read(path))
        rep = roundtrip_report(inst, node_budget=budget, var_guard=guard)
    except (NaeFormatError, OSError, ValueError) as exc:
        return EXIT_ERROR, f"error: {exc}\n"
    if rep.solve_status == "budget":
        code = EXIT_BUDGET
    elif rep.agree:
        code = EXIT_OK
    else:
        code = EXIT_DISAGREE
    return code, rep.as_text()


def _run_batch(paths: list[str], jobs: int, worker, items) -> int:
    if jobs > 1 and len(paths) > 1:
        with Pool(processes=min(jobs, len(items))) as pool:
            results = pool.map(worker, items)
    else:
        results = [worker(it) for it in items]
    worst = EXIT_OK
    for path, (code, text) in zip(paths, results):
        if len(paths) > 1:
            print(f"# {path}")
        sys.stdout.write(text)
        worst = max(worst, code)
    return worst


def cmd_certify_gadget(args: argparse.Namespace, cfg: RunConfig) -> int:
    paths = args.gadget
    if not paths:
        base = (Path(cfg.gadget_data_dir) if cfg.gadget_data_dir
                else Path(__file__).resolve().parent / "data")
        paths = sorted(str(p) for p in base.glob("*.gadget"))
        if not paths:
            return _fail(f"no .gadget files under {base}")
    items = [(p, cfg.cert_details) for p in paths]
    return _run_batch(paths, args.jobs, _certify_one, items)


def cmd_roundtrip(args: argparse.Namespace, cfg: RunConfig) -> int:
    items = [(p, cfg.solve_node_budget, cfg.nae_var_guard) for p in args.nae]
    return _run_batch(args.nae, args.jobs, _roundtrip_one, items)


def cmd_export_dot(args: argparse.Namespace, cfg: RunConfig) -> int:
    try:
        g = parse_graph(_read(args.graph))
        coloring = parse_coloring(_read(args.coloring)) if args.coloring else None
        if coloring is not None:
            res = verify(g, coloring, args.k)
            if not res.valid:
                return _fail(f"coloring fails verification: "
                             f"{len(res.violations)} conflicting pairs")
    except (GraphFormatError, OSError, ValueError) as exc:
        return _fail(str(exc))
    sys.stdout.write(export_dot(g, coloring, name=Path(args.graph).stem))
    return EXIT_OK


def cmd_encode_cnf(args: argparse.Namespace, cfg: RunConfig) -> int:
    try:
        g = parse_graph(_read(args.graph))
        hints = parse_coloring(_read(args.hints)) if args.hints else None
        text = encode_cnf(g, args.k, hints=hints)
    except (GraphFormatError, OSError, ValueError) as exc:
        return _fail(str(exc))
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="FILE",
                        help="key=value configuration file")
    common.add_argument("--node-budget", type=int, metavar="N",
                        help="solver node budget (default: unlimited)")
    common.add_argument("--edge-guard", type=int, metavar="N",
                        help="brute-force enumeration edge guard")
    common.add_argument("--var-guard", type=int, metavar="N",
                        help="NAE brute-force variable guard")
    common.add_argument("--data-dir", metavar="DIR",
                        help="directory holding shipped gadget files")
    common.add_argument("--witnesses", action="store_true",
                        help="print individual conflict witnesses")
    common.add_argument("--no-details", action="store_true",
                        help="suppress certification detail lines")

    parser = argparse.ArgumentParser(
        prog="d2color",
        description="Distance-2 edge coloring toolkit: NAE-3SAT reduction, "
                    "exact solver, gadget certification.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("reduce", parents=[common],
                       help="compile a NAE instance to a coloring graph")
    p.add_argument("nae")
    p.add_argument("graph_out")
    p.add_argument("prov_out")
    p.add_argument("--hints-out", metavar="FILE",
                   help="pinned-hints output (default: graph path, .hints)")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("solve", parents=[common],
                       help="decide k-colorability, write a coloring on SAT")
    p.add_argument("graph")
    p.add_argument("k", type=int)
    p.add_argument("--out", metavar="FILE",
                   help="coloring output file (default: stdout)")
    p.add_argument("--hints", metavar="FILE", help="pinned partial coloring")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", parents=[common],
                       help="check a coloring against a graph")
    p.add_argument("graph")
    p.add_argument("coloring")
    p.add_argument("--k", type=int, default=5)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("props", parents=[common],
                       help="report structural properties of a graph")
    p.add_argument("graph")
    p.set_defaults(func=cmd_props)

    p = sub.add_parser("certify-gadget", parents=[common],
                       help="certify gadget files against their role contracts")
    p.add_argument("gadget", nargs="*",
                   help="gadget files (default: the shipped library)")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_certify_gadget)

    p = sub.add_parser("roundtrip", parents=[common],
                       help="compare NAE brute force with the compiled search")
    p.add_argument("nae", nargs="+")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_roundtrip)

    p = sub.add_parser("export-dot", parents=[common],
                       help="render a graph (optionally colored) as DOT")
    p.add_argument("graph")
    p.add_argument("coloring", nargs="?")
    p.add_argument("--k", type=int, default=5)
    p.set_defaults(func=cmd_export_dot)

    p = sub.add_parser("encode-cnf", parents=[common],
                       help="encode the coloring instance as DIMACS CNF")
    p.add_argument("graph")
    p.add_argument("k", type=int)
    p.add_argument("--out", metavar="FILE")
    p.add_argument("--hints", metavar="FILE")
    p.set_defaults(func=cmd_encode_cnf)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = _config_from(args)
        return args.func(args, cfg)
    except BrokenPipeError:
        # Downstream pager closed early; suppress the interpreter's noise.
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        return EXIT_OK
    except (ValueError, OSError) as exc:
        return _fail(str(exc))


if __name__ == "__main__":
    sys.exit(main())
