"""Unified command-line front end.

Exit codes: 0 all assertions passed; 1 counterexample or violation found
(report carries the witness); 2 usage or input error; 3 budget exhausted
(partial report).  Reports are deterministic for a fixed config and seed
up to the timing block.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from fractions import Fraction

from . import __version__
from .analysis import shortcut_certificate, strong_shortcut_profile
from .cycles import CycleInGraph
from .diagrams import FillingParams, build_disk_diagram
from .errors import (
    BudgetExhausted,
    CycleTooLong,
    PropertyAViolated,
    ShortcutLabError,
)
from .graphs import Graph
from .groups.cayley import GroupSpec, cayley_ball
from .groups.verify import (
    verify_attaugc,
    verify_attaugeos,
    verify_bss,
    verify_geodesic_lemmas,
    verify_powtsum,
)
from .search import SearchBudget
from .walls import verify_wallcycle_theorem

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3


def _parse_fraction(text):
    try:
        if "/" in text:
            num, den = text.split("/")
            return Fraction(int(num), int(den))
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ShortcutLabError(f"cannot parse fraction {text!r}: {exc}")


def _parse_int_list(text):
    """Accept '1,2,5' or '1..4' range syntax."""
    if ".." in text:
        lo, hi = text.split("..")
        return list(range(int(lo), int(hi) + 1))
    return [int(x) for x in text.split(",") if x]


def _load_graph(path):
    try:
        with open(path) as fh:
            text = fh.read()
        return Graph.from_json(text)
    except FileNotFoundError:
        raise ShortcutLabError(f"graph file not found: {path}")
    except json.JSONDecodeError as exc:
        raise ShortcutLabError(
            f"malformed graph JSON at line {exc.lineno} column {exc.colno}: {exc.msg}"
        )


def _thread_count(args):
    if getattr(args, "threads", None):
        return args.threads
    env = os.environ.get("SHORTCUT_LAB_THREADS")
    return int(env) if env else 1


class Report:
    def __init__(self, subcommand, config):
        self.obj = {
            "tool": {"name": "shortcut-lab", "version": __version__},
            "subcommand": subcommand,
            "config": config,
            "verdicts": {},
            "exhaustive": True,
        }
        self.started = time.monotonic()

    def finish(self, fmt, out_path=None):
        self.obj["timing"] = {"seconds": round(time.monotonic() - self.started, 3)}
        text = json.dumps(self.obj, indent=2, sort_keys=True)
        if out_path:
            with open(out_path, "w") as fh:
                fh.write(text + "\n")
        if fmt == "json":
            print(text)
        else:
            self._print_text()
        return self

    def _print_text(self):
        obj = self.obj
        print(f"shortcut-lab {__version__} :: {obj['subcommand']}")
        for key, val in sorted(obj["verdicts"].items()):
            print(f"  {key}: {val}")
        if not obj["exhaustive"]:
            print("  (search incomplete: budget exhausted)")
        print(f"  time: {obj['timing']['seconds']}s")


def _add_common(p):
    p.add_argument("--format", choices=("json", "text"), default="text")
    p.add_argument("--out", help="also write the JSON report to this path")
    p.add_argument("--threads", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int, default=None, help="max node expansions")


def _budget(args):
    return SearchBudget(args.budget) if args.budget else SearchBudget()


def cmd_analyze(args):
    g = _load_graph(args.graph)
    report = Report(
        "analyze",
        {
            "graph": args.graph,
            "max_cycle_len": args.max_cycle_len,
            "mode": args.mode,
            "seed": args.seed,
            "budget": args.budget,
            "threads": _thread_count(args),
            "profile_lengths": args.profile_lengths,
        },
    )
    cert = shortcut_certificate(g, args.max_cycle_len, budget=_budget(args))
    report.obj["verdicts"]["theta"] = cert.theta
    report.obj["verdicts"]["range_checked"] = cert.range_checked
    report.obj["exhaustive"] = cert.exhaustive
    report.obj["witnesses"] = [list(c.vertices) for c in cert.witnesses[:10]]
    if args.profile_lengths:
        lengths = _parse_int_list(args.profile_lengths)
        prof = strong_shortcut_profile(
            g,
            lengths,
            budget=_budget(args),
            heuristic=(args.mode == "heuristic"),
            seed=args.seed,
        )
        report.obj["profile"] = prof.to_json_obj()
        if args.mode == "exact" and not all(e.exhaustive for e in prof.entries):
            report.obj["exhaustive"] = False
    report.finish(args.format, args.out)
    return EXIT_OK if report.obj["exhaustive"] or args.mode == "heuristic" else EXIT_BUDGET


def cmd_disk(args):
    g = _load_graph(args.graph)
    cycle = CycleInGraph(tuple(int(x) for x in args.cycle.split(",")))
    params = FillingParams(args.theta, _parse_fraction(args.xi), args.n_max or max(cycle.length, args.theta))
    report = Report(
        "disk",
        {
            "graph": args.graph,
            "cycle": list(cycle.vertices),
            "theta": args.theta,
            "xi": args.xi,
            "n_max": params.n_max,
        },
    )
    try:
        diagram = build_disk_diagram(g, cycle, params)
    except PropertyAViolated as exc:
        report.obj["verdicts"]["property_a"] = "violated"
        report.obj["witness"] = list(exc.witness.vertices)
        report.finish(args.format, args.out)
        return EXIT_VIOLATION
    diagram.validate(g, cycle, params.theta)
    report.obj["verdicts"]["area"] = diagram.area
    report.obj["verdicts"]["diameter"] = diagram.diameter()
    report.obj["diagram"] = diagram.to_json_obj()
    if args.dot:
        with open(args.dot, "w") as fh:
            fh.write(diagram.skeleton.to_dot("diagram") + "\n")
    report.finish(args.format, args.out)
    return EXIT_OK


def cmd_wallcycle_verify(args):
    strategy = "random" if args.random else "exhaustive_pairs"
    report = Report(
        "wallcycle verify",
        {
            "dim": args.dim,
            "max_len": args.max_len,
            "strategy": strategy,
            "samples": args.samples,
            "seed": args.seed,
        },
    )
    res = verify_wallcycle_theorem(
        args.dim, args.max_len, strategy, seed=args.seed, samples=args.samples
    )
    report.obj["verdicts"]["examined"] = res.examined
    report.obj["verdicts"]["premise_satisfying"] = res.premise_satisfying
    report.obj["verdicts"]["max_satisfying_length"] = res.max_satisfying_length
    report.obj["verdicts"]["length_bound"] = str(res.length_bound)
    report.obj["verdicts"]["violations"] = len(res.violations)
    report.obj["verdicts"]["lemma_failures"] = len(res.lemma_failures)
    report.obj["violations"] = [list(v) for v in res.violations]
    report.obj["exhaustive"] = res.complete
    report.finish(args.format, args.out)
    return EXIT_OK if res.passed else EXIT_VIOLATION


def cmd_cayley(args):
    if args.group == "zn":
        if not args.vectors:
            raise ShortcutLabError("--vectors is required for --group zn")
        vectors = [tuple(int(c) for c in part.split(",")) for part in args.vectors.split(";")]
        spec = GroupSpec.free_abelian(vectors)
    else:
        gens = args.gens.split(",") if args.gens else ["a", "t"]
        spec = GroupSpec.bs12(tuple(gens))
    report = Report(
        "cayley",
        {"group": args.group, "vectors": args.vectors, "gens": args.gens, "radius": args.radius},
    )
    try:
        ball = cayley_ball(spec, args.radius, max_elements=args.max_elements)
    except BudgetExhausted as exc:
        report.obj["verdicts"]["ball"] = "budget exhausted"
        report.obj["partial"] = exc.partial
        report.obj["exhaustive"] = False
        report.finish(args.format, args.out)
        return EXIT_BUDGET
    report.obj["verdicts"]["elements"] = len(ball.elements)
    report.obj["verdicts"]["edges"] = ball.graph.edge_count
    report.obj["ball"] = ball.to_json_obj()
    report.finish(args.format, args.out)
    return EXIT_OK


def cmd_bs12(args):
    sub = args.bs12_command
    if sub == "verify-bss":
        report = Report("bs12 verify-bss", {"max_cycle_len": args.max_cycle_len})
        res = verify_bss(args.max_cycle_len)
        report.obj["verdicts"]["isometric_cycle_counts"] = {
            str(k): v for k, v in res.counts.items()
        }
        report.obj["verdicts"]["violations_over_5"] = len(res.violations)
        report.obj["violations"] = [list(w) for w in res.violations]
        report.finish(args.format, args.out)
        return EXIT_OK if res.passed else EXIT_VIOLATION
    if sub == "verify-attaugc":
        ks = _parse_int_list(args.k)
        report = Report("bs12 verify-attaugc", {"k": ks})
        res = verify_attaugc(tuple(ks))
        report.obj["verdicts"]["entries"] = [
            {"k": e.k, "length": e.length, "isometric": e.isometric} for e in res.entries
        ]
        report.finish(args.format, args.out)
        return EXIT_OK if res.passed else EXIT_VIOLATION
    if sub == "verify-attaugeos":
        ks = _parse_int_list(args.k)
        report = Report("bs12 verify-attaugeos", {"k": ks})
        res = verify_attaugeos(tuple(ks))
        report.obj["verdicts"]["all_geodesic"] = res.passed
        report.obj["verdicts"]["entries"] = len(res.entries)
        report.finish(args.format, args.out)
        return EXIT_OK if res.passed else EXIT_VIOLATION
    if sub == "verify-geodesic-lemmas":
        report = Report("bs12 verify-geodesic-lemmas", {"radius": args.radius})
        res = verify_geodesic_lemmas(args.radius)
        report.obj["verdicts"]["elements"] = res.elements
        report.obj["verdicts"]["geodesic_words"] = res.geodesic_words
        report.obj["verdicts"]["drift_cases"] = res.drift_cases
        report.obj["verdicts"]["failures"] = len(res.failures)
        report.obj["failures"] = res.failures[:50]
        report.obj["exhaustive"] = res.complete
        report.finish(args.format, args.out)
        if not res.complete:
            return EXIT_BUDGET
        return EXIT_OK if res.passed else EXIT_VIOLATION
    if sub == "verify-powtsum":
        report = Report("bs12 verify-powtsum", {"kmax": args.kmax, "mmax": args.mmax})
        res = verify_powtsum(args.kmax, args.mmax)
        report.obj["verdicts"]["cases"] = len(res.entries)
        report.obj["verdicts"]["failures"] = len(res.failures)
        report.obj["failures"] = res.failures
        report.finish(args.format, args.out)
        return EXIT_OK if res.passed else EXIT_VIOLATION
    raise ShortcutLabError(f"unknown bs12 subcommand {sub!r}")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="shortcut-lab",
        description="shortcut certificates, disk diagrams, wall cycles and BS(1,2) verification",
    )
    parser.add_argument("--version", action="version", version=f"shortcut-lab {__version__}")
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("analyze", help="shortcut certificate and strong-shortcut profile")
    p.add_argument("--graph", required=True)
    p.add_argument("--max-cycle-len", type=int, required=True)
    p.add_argument("--mode", choices=("exact", "heuristic"), default="exact")
    p.add_argument("--profile-lengths", help="e.g. 3..10 or 4,6,8")
    _add_common(p)
    p.set_defaults(func=cmd_analyze)

    p = subs.add_parser("disk", help="build a disk diagram for a cycle")
    p.add_argument("--graph", required=True)
    p.add_argument("--cycle", required=True, help="comma-separated vertex ids")
    p.add_argument("--theta", type=int, required=True)
    p.add_argument("--xi", required=True, help="fraction p/q in (0,1)")
    p.add_argument("--n-max", type=int, default=None)
    p.add_argument("--dot", help="write the skeleton as DOT to this path")
    _add_common(p)
    p.set_defaults(func=cmd_disk)

    wall = subs.add_parser("wallcycle", help="wall cycle tools")
    wsubs = wall.add_subparsers(dest="wall_command", required=True)
    p = wsubs.add_parser("verify", help="search for wall-cycle counterexamples")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--max-len", type=int, required=True)
    group = p.add_mutually_exclusive_group()
    group.add_argument("--exhaustive", action="store_true")
    group.add_argument("--random", action="store_true")
    p.add_argument("--samples", type=int, default=1_000_000)
    _add_common(p)
    p.set_defaults(func=cmd_wallcycle_verify)

    p = subs.add_parser("cayley", help="generate a Cayley ball")
    p.add_argument("--group", choices=("zn", "bs12"), required=True)
    p.add_argument("--vectors", help='e.g. "1,0;0,1;1,1"')
    p.add_argument("--gens", help='e.g. "a,t,tau"')
    p.add_argument("--radius", type=int, required=True)
    p.add_argument("--max-elements", type=int, default=None)
    _add_common(p)
    p.set_defaults(func=cmd_cayley)

    b = subs.add_parser("bs12", help="BS(1,2) verifiers")
    bsubs = b.add_subparsers(dest="bs12_command", required=True)
    p = bsubs.add_parser("verify-bss")
    p.add_argument("--max-cycle-len", type=int, required=True)
    _add_common(p)
    p.set_defaults(func=cmd_bs12)
    p = bsubs.add_parser("verify-attaugc")
    p.add_argument("--k", required=True, help="e.g. 1..3 or 1,2")
    _add_common(p)
    p.set_defaults(func=cmd_bs12)
    p = bsubs.add_parser("verify-attaugeos")
    p.add_argument("--k", required=True, help="e.g. 2..5")
    _add_common(p)
    p.set_defaults(func=cmd_bs12)
    p = bsubs.add_parser("verify-geodesic-lemmas")
    p.add_argument("--radius", type=int, default=8)
    _add_common(p)
    p.set_defaults(func=cmd_bs12)
    p = bsubs.add_parser("verify-powtsum")
    p.add_argument("--kmax", type=int, default=6)
    p.add_argument("--mmax", type=int, default=4)
    _add_common(p)
    p.set_defaults(func=cmd_bs12)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ShortcutLabError, OSError) as exc:
        if isinstance(exc, BudgetExhausted):
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_BUDGET
        if isinstance(exc, (CycleTooLong,)):
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_USAGE
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
