"""Command-line entry point: ``kayles SUBCOMMAND ...``.

Exit codes: 0 success, 1 usage error, 2 input error, 3 cap exceeded.
``symmetry`` additionally exits 4 when no involution exists, and ``verify``
exits 5 when a suite has failing cases.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import generators
from .graph import Graph, GraphError, ParseError, format_graph, is_tree, parse_graph
from .kernel import (DEFAULT_L_MAX, KernelOptions, PathCatalog, build_path_catalog,
                     default_catalog, kernel_report, kernelize)
from .reductions import (Gadget, avoidtrue_to_csgk, connected_or_raise, gi_gadget,
                         nk_to_csg, parse_dnf)
from .rulesets import NDAK, parse_ruleset
from .solver import (CapExceeded, Outcome, SolveReport, detect_period, grundy_sequence,
                     solve_grundy, solve_outcome)
from .suites import SUITES, run_suite
from .symmetry import find_edge_disjoint_involution
from .tractable import (NotInClass, clique_tree_outcome, is_clique_tree, threshold_outcome,
                        tree_outcome)

EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3
EXIT_NOT_FOUND, EXIT_SUITE_FAILED = 4, 5
SCHEMA_VERSION = 1


class UsageError(Exception):
    pass


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _record(kind: str, **fields) -> str:
    return json.dumps({"schema": f"kayles.{kind}/{SCHEMA_VERSION}", **fields},
                      sort_keys=True, indent=2)


def read_graph(path: str) -> Graph:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror or exc}") from None
    try:
        return parse_graph(text)
    except ParseError as exc:
        raise InputError(f"{path}: {exc}") from None


def write_text(path: str, text: str) -> None:
    try:
        Path(path).write_text(text)
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror or exc}") from None


def write_gadget(path: str, gadget: Gadget) -> None:
    write_text(path, format_graph(gadget.graph))
    write_text(path + ".map", gadget.format_map())


def _fast_outcome(g: Graph) -> tuple[Outcome, str] | None:
    if is_tree(g):
        return tree_outcome(g)[0], "tree"
    if is_clique_tree(g):
        return clique_tree_outcome(g)[0], "clique-tree"
    try:
        return threshold_outcome(g), "threshold"
    except NotInClass:
        return None


def cmd_solve(args) -> int:
    rs = _ruleset(args.game)
    g = read_graph(args.input)
    method = "search"
    report = None
    if args.fast and rs == NDAK and not args.grundy and g.n:
        fast = _fast_outcome(g)
        if fast is not None:
            report, method = SolveReport(fast[0]), fast[1]
    if report is None:
        try:
            report = solve_grundy(rs, g) if args.grundy else solve_outcome(rs, g)
        except CapExceeded:
            raise
        except ValueError as exc:
            raise InputError(f"{args.input}: {exc}") from None
    if args.json:
        print(_record("solve", game=args.game, input=args.input, method=method,
                      n=g.n, m=g.m, **report.to_dict()))
    else:
        sys.stdout.write(report.to_record())
        print(f"method: {method}")
    return EXIT_OK


def cmd_sequence(args) -> int:
    rs = _ruleset(args.game)
    try:
        seq = grundy_sequence(rs, args.family, args.max_n)
    except CapExceeded:
        raise
    except ValueError as exc:
        raise InputError(str(exc)) from None
    print(" ".join(map(str, seq)))
    if args.detect_period:
        found = detect_period(seq)
        if found is None:
            print("period: none detected")
        else:
            print(f"period {found[1]}")
            print(f"preperiod {found[0]}")
    return EXIT_OK


def _catalog(args) -> PathCatalog:
    if args.catalog:
        path = Path(args.catalog)
        if path.exists():
            try:
                cat = PathCatalog.load(path)
            except (OSError, ValueError, KeyError) as exc:
                raise InputError(f"{path}: unreadable catalog ({exc})") from None
            if args.lmax is not None and cat.l_max != args.lmax:
                raise InputError(f"{path}: catalog has l_max={cat.l_max}, not {args.lmax}")
            return cat
        cat = build_path_catalog(args.lmax or DEFAULT_L_MAX)
        cat.save(path)
        return cat
    if args.lmax is None or args.lmax == DEFAULT_L_MAX:
        return default_catalog()
    return build_path_catalog(args.lmax)


def cmd_kernelize(args) -> int:
    g = read_graph(args.input)
    try:
        connected_or_raise(g)
    except GraphError as exc:
        raise InputError(f"{args.input}: {exc}") from None
    inst = kernelize(g, KernelOptions(catalog=_catalog(args)))
    report = kernel_report(g, inst)
    if args.json:
        print(_record("kernel", input=args.input, kernel=format_graph(inst.graph),
                      trace=[[r.rule, r.vertices_before, r.vertices_after, r.detail]
                             for r in inst.trace],
                      **report.to_dict()))
        return EXIT_OK
    d = report.to_dict()
    print(f"original: n={d['original_n']} m={d['original_m']} fen={d['fen']}")
    for rule, delta in sorted(d["rule_deltas"].items()):
        print(f"{rule}: {delta:+d} vertices")
    print(f"kernel: n={d['final_n']} m={d['final_m']}")
    print(f"branch vertices: {d['branch_vertices']} (bound {d['branch_bound']})")
    if d["unmatched_segments"]:
        print(f"unmatched segments: {d['unmatched_segments']}")
    print(f"outcome: {d['outcome'] or 'unresolved'}")
    return EXIT_OK


def cmd_reduce(args) -> int:
    if args.source == "node-kayles":
        if args.set is None:
            raise UsageError("reduce --from node-kayles needs --set")
        try:
            sizes = [int(x) for x in args.set.split(",") if x]
        except ValueError:
            raise UsageError(f"--set: expected comma-separated integers, got {args.set!r}") from None
        g = read_graph(args.input)
        try:
            gadget = nk_to_csg(g, sizes, args.girth)
        except GraphError as exc:
            raise InputError(str(exc)) from None
    else:
        if args.k is None:
            raise UsageError("reduce --from avoid-true needs --k")
        try:
            text = Path(args.input).read_text()
        except OSError as exc:
            raise InputError(f"{args.input}: {exc.strerror or exc}") from None
        try:
            formula = parse_dnf(text)
            gadget = avoidtrue_to_csgk(formula, args.k, anchor=args.anchor)
        except ValueError as exc:
            raise InputError(f"{args.input}: {exc}") from None
    write_gadget(args.output, gadget)
    print(f"wrote {args.output} (n={gadget.graph.n} m={gadget.graph.m}) and {args.output}.map")
    return EXIT_OK


def cmd_gi_gadget(args) -> int:
    g1, g2 = read_graph(args.g1), read_graph(args.g2)
    gadget = gi_gadget(g1, g2)
    write_gadget(args.output, gadget)
    print(f"wrote {args.output} (n={gadget.graph.n} m={gadget.graph.m}) and {args.output}.map")
    return EXIT_OK


def cmd_symmetry(args) -> int:
    g = read_graph(args.input)
    f = find_edge_disjoint_involution(g, cap=args.cap)
    if f is None:
        print("no edge-disjoint involution")
        return EXIT_NOT_FOUND
    sys.stdout.write(f.certificate())
    return EXIT_OK


def cmd_gen(args) -> int:
    try:
        g = generators.generate(args.family, args.seed)
    except GraphError as exc:
        raise UsageError(f"--family: {exc}") from None
    write_text(args.output, format_graph(g))
    print(f"wrote {args.output} (n={g.n} m={g.m})")
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.suite not in SUITES:
        raise UsageError(f"unknown suite {args.suite!r}; choose from {', '.join(SUITES)}")

    def show(case):
        status = "skip" if case.skipped else ("ok" if case.ok else "FAIL")
        if not args.json:
            print(f"{status:4} {case.name}: {case.detail}", flush=True)

    try:
        result = run_suite(args.suite, args.seed, args.case, on_case=None if args.json else show)
    except KeyError as exc:
        raise UsageError(str(exc.args[0])) from None
    if args.json:
        print(json.dumps(result.to_dict(), sort_keys=True, indent=2))
    else:
        d = result.to_dict()
        print(f"summary: {args.suite} passed={d['passed']} failed={d['failed']} "
              f"skipped={d['skipped']}")
        for case in result.failures:
            print(f"counterexample {case.name}: {case.detail}")
            if case.counterexample is not None:
                sys.stdout.write(format_graph(case.counterexample))
            print(f"reproduce: kayles verify --suite {args.suite} --seed {args.seed} "
                  f"--case {case.name}")
    return EXIT_OK if result.ok else EXIT_SUITE_FAILED


def _ruleset(text: str):
    try:
        return parse_ruleset(text)
    except ValueError as exc:
        raise UsageError(f"--game: {exc}") from None


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="kayles", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("solve", help="outcome (and Grundy value) of a position")
    s.add_argument("--game", required=True,
                   help="arc-kayles, node-kayles, nd-node-kayles, ndak or csg:K1,K2,..")
    s.add_argument("--input", required=True)
    s.add_argument("--grundy", action="store_true")
    s.add_argument("--fast", action="store_true",
                   help="use the tree / clique-tree / threshold algorithms when they apply")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("sequence", help="Grundy values along paths or cycles")
    s.add_argument("--game", required=True)
    s.add_argument("--family", required=True, choices=("path", "cycle"))
    s.add_argument("--max-n", required=True, type=int)
    s.add_argument("--detect-period", action="store_true")
    s.set_defaults(func=cmd_sequence)

    s = sub.add_parser("kernelize", help="feedback-edge kernel for NDAK")
    s.add_argument("--input", required=True)
    s.add_argument("--catalog", help="path catalog file; built and saved if missing")
    s.add_argument("--lmax", type=int)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_kernelize)

    s = sub.add_parser("reduce", help="build a reduction gadget")
    s.add_argument("--from", dest="source", required=True, choices=("node-kayles", "avoid-true"))
    s.add_argument("--input", required=True)
    group = s.add_mutually_exclusive_group(required=True)
    group.add_argument("--set", help="subtraction set, e.g. 2,3")
    group.add_argument("--k", type=int)
    s.add_argument("--girth", type=int)
    s.add_argument("--anchor", action="store_true",
                   help="avoid-true only: add the anchor vertex")
    s.add_argument("--output", required=True)
    s.set_defaults(func=cmd_reduce)

    s = sub.add_parser("gi-gadget", help="graph pair to involution instance")
    s.add_argument("--g1", required=True)
    s.add_argument("--g2", required=True)
    s.add_argument("--output", required=True)
    s.set_defaults(func=cmd_gi_gadget)

    s = sub.add_parser("symmetry", help="find an edge-disjoint involutive automorphism")
    s.add_argument("--input", required=True)
    s.add_argument("--cap", type=int, default=24)
    s.set_defaults(func=cmd_symmetry)

    s = sub.add_parser("gen", help="write a generated graph")
    s.add_argument("--family", required=True, help="e.g. path:8, grid:2x4, random:10,12")
    s.add_argument("--output", required=True)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("verify", help="run a verification suite")
    s.add_argument("--suite", required=True)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--case", help="run a single case by name")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_verify)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if getattr(args, "girth", None) is not None and args.source != "node-kayles":
            raise UsageError("--girth applies to --from node-kayles only")
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except CapExceeded as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP


if __name__ == "__main__":
    sys.exit(main())
