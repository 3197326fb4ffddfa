"""Command-line surface.

Exit codes: 0 = analysis ran (whatever the verdict), 2 = input error,
3 = a size cap was exceeded. All outputs are deterministic: same input,
same bytes.
"""
from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from . import banfile
from .attractor import limit_cycles, render_report, terminal_sccs
from .dynamics import (
    build_graph,
    check_nonexpansive,
    edge_lines,
    to_dot,
)
from .errors import CapExceededError, InputError
from .network import Ban, build_igraph, gen_cycle, state_to_str
from .schedule import BlockSchedule, parse_block_schedule
from .sensitivity import (
    emulation_equivalent,
    is_synchronism_sensitive,
    parse_precedence,
)


def _parse_schedule_arg(spec: str, ban: Ban) -> tuple[str, Optional[BlockSchedule]]:
    if spec in ("parallel", "async", "general"):
        return spec, None
    if spec.startswith("bsus:"):
        return "bsus", parse_block_schedule(spec[len("bsus:"):], ban.names)
    raise InputError(
        f"bad schedule {spec!r}; expected parallel, async, general or bsus:{{a}}{{b,c}}"
    )


def cmd_check(args: argparse.Namespace) -> int:
    ban = banfile.load_path(args.file)
    graph = build_igraph(ban)
    print(f"n={ban.n}")
    print("names: " + " ".join(ban.names))
    for arc in graph.arcs:
        print(f"{arc.source} -> {arc.target} [{arc.sign.symbol}]")
    return 0


def cmd_trans(args: argparse.Namespace) -> int:
    ban = banfile.load_path(args.file)
    mode, schedule = _parse_schedule_arg(args.schedule, ban)
    graph = build_graph(ban, mode, schedule, max_n=args.max_n)
    if args.dot:
        sys.stdout.write(to_dot(graph, emit_self_loops=args.emit_self_loops))
    else:
        for line in edge_lines(graph, emit_self_loops=args.emit_self_loops):
            print(line)
    return 0


def cmd_attractors(args: argparse.Namespace) -> int:
    ban = banfile.load_path(args.file)
    mode, schedule = _parse_schedule_arg(args.schedule, ban)
    if mode == "parallel":
        report = limit_cycles(ban, BlockSchedule.parallel(ban.n), max_n=args.max_n)
    elif mode == "bsus":
        assert schedule is not None
        report = limit_cycles(ban, schedule, max_n=args.max_n)
    else:
        report = terminal_sccs(build_graph(ban, mode, max_n=args.max_n))
    print(render_report(report, show_states=args.states))
    if report.basins_overlap:
        print("note: basins overlap (a state can reach more than one attractor)")
    return 0


def cmd_sensitivity(args: argparse.Namespace) -> int:
    ban = banfile.load_path(args.file)
    report = is_synchronism_sensitive(ban, max_n=args.max_n)
    print("SENSITIVE" if report.sensitive else "NOT SENSITIVE")
    print(f"async attractors: {len(report.async_families)}")
    print(f"general attractors: {len(report.general_families)}")
    if report.lasting:
        print("lasting transitions:")
        for verdict in report.lasting:
            print(verdict.render(ban.n))
    else:
        print("lasting transitions: none")
    return 0


def cmd_emulate(args: argparse.Namespace) -> int:
    target = banfile.load_path(args.target)
    host = banfile.load_path(args.host)
    spec = parse_precedence(args.precede, host.names)
    hidden = frozenset()
    if args.hide:
        hidden = frozenset(host.index_of(name.strip())
                           for name in args.hide.split(","))
    report = emulation_equivalent(target, host, spec, hidden)
    if report.equivalent:
        print("EQUIVALENT")
    else:
        print("NOT EQUIVALENT")
        for t_index, state in report.mismatches:
            print(
                f"automaton {target.names[t_index]}: differs at "
                f"{state_to_str(state, target.n)}"
            )
    return 0


def cmd_nonexpansive(args: argparse.Namespace) -> int:
    ban = banfile.load_path(args.file)
    result = check_nonexpansive(ban, max_n=args.max_n)
    if result.nonexpansive:
        print("NONEXPANSIVE")
    else:
        assert result.witness is not None
        x, y = result.witness
        print(f"EXPANSIVE: x={state_to_str(x, ban.n)} y={state_to_str(y, ban.n)}")
    return 0


def cmd_gen_cycle(args: argparse.Namespace) -> int:
    ban = gen_cycle(args.n, negative=args.sign == "neg")
    sys.stdout.write(banfile.dumps(ban))
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="banlib",
        description="Boolean automata networks: transition graphs, attractors, "
        "schedules, synchronism-sensitivity and emulation.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="validate a network file, print its signed arcs")
    p.add_argument("file")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("trans", help="print a transition graph (edge list or DOT)")
    p.add_argument("file")
    p.add_argument("--schedule", required=True,
                   help="parallel | async | general | bsus:{a}{b,c}")
    p.add_argument("--dot", action="store_true", help="emit Graphviz instead of edges")
    p.add_argument("--emit-self-loops", action="store_true",
                   help="restore the literal (x,x) edges of the general relation")
    p.add_argument("--max-n", type=int, default=None, help="override the size cap")
    p.set_defaults(func=cmd_trans)

    p = sub.add_parser("attractors", help="enumerate attractors and basin sizes")
    p.add_argument("file")
    p.add_argument("--schedule", required=True,
                   help="parallel | async | general | bsus:{a}{b,c}")
    p.add_argument("--states", action="store_true", help="list attractor states")
    p.add_argument("--max-n", type=int, default=None, help="override the size cap")
    p.set_defaults(func=cmd_attractors)

    p = sub.add_parser("sensitivity",
                       help="synchronism-sensitivity verdict with evidence")
    p.add_argument("file")
    p.add_argument("--max-n", type=int, default=None, help="override the size cap")
    p.set_defaults(func=cmd_sensitivity)

    p = sub.add_parser("emulate",
                       help="can HOST emulate TARGET under an imposed precedence?")
    p.add_argument("target")
    p.add_argument("host")
    p.add_argument("--precede", default="",
                   help="comma-separated u<v pairs over host automaton names")
    p.add_argument("--hide", default="",
                   help="comma-separated host automata to erase")
    p.set_defaults(func=cmd_emulate)

    p = sub.add_parser("nonexpansive",
                       help="does Hamming distance never grow under the parallel map?")
    p.add_argument("file")
    p.add_argument("--max-n", type=int, default=None, help="override the size cap")
    p.set_defaults(func=cmd_nonexpansive)

    p = sub.add_parser("gen-cycle", help="print a Boolean automata cycle network file")
    p.add_argument("n", type=int)
    p.add_argument("sign", choices=("neg", "pos"))
    p.set_defaults(func=cmd_gen_cycle)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CapExceededError as err:
        print(f"error: {err}", file=sys.stderr)
        return 3
    except InputError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
