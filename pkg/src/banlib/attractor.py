"""Attractors and basins over every transition semantics.

Deterministic schedules get their limit cycles straight from the functional
graph (orbit walking); nondeterministic settings get terminal strongly
connected components via a single-pass Tarjan over the implicit successor
function. The two routes are cross-validated against each other in the test
suite, and Tarjan additionally against a naive reachability-closure oracle.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .dynamics import (
    DEFAULT_STATE_CAP,
    TransitionGraph,
    build_graph,
    instability_masks,
)
from .errors import CapExceededError
from .network import Ban, State, state_to_str
from .scc import strongly_connected_components
from .schedule import BlockSchedule


@dataclass(frozen=True)
class Attractor:
    """A terminal component or limit cycle.

    kind is fixed_point, limit_cycle (with `length`) or terminal_scc;
    `instabilities` is the sorted multiset of |U(x)| over member states;
    `basin_size` counts the states from which the attractor is reachable,
    members included.
    """

    states: frozenset[State]
    kind: str
    length: Optional[int]
    instabilities: tuple[int, ...]
    basin_size: int

    def min_state(self, n: int) -> State:
        return min(self.states, key=lambda s: state_to_str(s, n))


@dataclass(frozen=True)
class AttractorReport:
    mode: str
    n: int
    attractors: tuple[Attractor, ...]
    basins_overlap: bool

    def state_families(self) -> frozenset[frozenset[State]]:
        """Attractor identity for cross-mode comparison: the state sets."""
        return frozenset(a.states for a in self.attractors)


def instability_profile(ban: Ban, states: Iterable[State]) -> tuple[int, ...]:
    """Sorted multiset of |U(x)| over the given states."""
    masks = instability_masks(ban)
    return tuple(sorted(masks[x].bit_count() for x in states))


def instability_trace(ban: Ban, path: Iterable[State]) -> tuple[int, ...]:
    """|U(x)| along a trajectory, in path order.

    Lets one watch how sequential vs synchronous steps grow or settle the
    number of instabilities; no claim about the trend is built in.
    """
    masks = instability_masks(ban)
    return tuple(masks[x].bit_count() for x in path)


def fixed_points(ban: Ban, max_n: Optional[int] = None) -> frozenset[State]:
    """All states with U(x) empty."""
    cap = DEFAULT_STATE_CAP if max_n is None else max_n
    if ban.n > cap:
        raise CapExceededError(ban.n, cap, "fixed point enumeration")
    masks = instability_masks(ban)
    return frozenset(x for x in range(1 << ban.n) if not masks[x])


def _sort_attractors(attractors: list[Attractor], n: int) -> tuple[Attractor, ...]:
    return tuple(
        sorted(attractors, key=lambda a: (len(a.states), state_to_str(a.min_state(n), n)))
    )


def limit_cycles(
    ban: Ban, schedule: BlockSchedule, max_n: Optional[int] = None
) -> AttractorReport:
    """Cycles of the one-period map, with basin sizes.

    In a functional graph every orbit lands on exactly one cycle, so basins
    partition the state space.
    """
    graph = build_graph(ban, "bsus", schedule, max_n=max_n)
    step = graph.step_table()
    size = graph.size
    u_masks = graph.u_masks()

    cycle_of = [-1] * size  # attractor index reached from each state
    cycles: list[list[State]] = []
    for start in range(size):
        if cycle_of[start] >= 0:
            continue
        path: list[State] = []
        position: dict[State, int] = {}
        v = start
        while cycle_of[v] < 0 and v not in position:
            position[v] = len(path)
            path.append(v)
            v = step[v]
        if cycle_of[v] >= 0:
            cid = cycle_of[v]
        else:
            cid = len(cycles)
            cycles.append(path[position[v]:])
        for u in path:
            cycle_of[u] = cid

    basin = [0] * len(cycles)
    for cid in cycle_of:
        basin[cid] += 1

    attractors = []
    for cid, cycle in enumerate(cycles):
        states = frozenset(cycle)
        kind = "fixed_point" if len(cycle) == 1 else "limit_cycle"
        attractors.append(
            Attractor(
                states=states,
                kind=kind,
                length=None if kind == "fixed_point" else len(cycle),
                instabilities=tuple(sorted(u_masks[x].bit_count() for x in states)),
                basin_size=basin[cid],
            )
        )
    return AttractorReport(
        mode="bsus", n=ban.n, attractors=_sort_attractors(attractors, ban.n),
        basins_overlap=False,
    )


def terminal_sccs(graph: TransitionGraph) -> AttractorReport:
    """Attractors as terminal SCCs, basins by reachability.

    In nondeterministic modes basins may overlap (a state can reach two
    attractors); the report says so explicitly. For deterministic graphs
    the result coincides with limit_cycles.
    """
    size = graph.size
    targets = graph.targets
    components = strongly_connected_components(size, targets)
    comp_of = [0] * size
    for cid, comp in enumerate(components):
        for v in comp:
            comp_of[v] = cid

    terminal = bytearray(len(components))
    for cid, comp in enumerate(components):
        terminal[cid] = 1
        for v in comp:
            if any(comp_of[w] != cid for w in targets(v)):
                terminal[cid] = 0
                break

    # condensation, reversed, deduplicated
    reverse: list[set[int]] = [set() for _ in components]
    for v in range(size):
        cv = comp_of[v]
        for w in targets(v):
            if comp_of[w] != cv:
                reverse[comp_of[w]].add(cv)

    comp_size = [len(c) for c in components]
    u_masks = graph.u_masks()
    stamp = [0] * len(components)
    attractors = []
    total_basin = 0
    mark = 0
    for cid, comp in enumerate(components):
        if not terminal[cid]:
            continue
        mark += 1
        stamp[cid] = mark
        stack = [cid]
        basin = 0
        while stack:
            c = stack.pop()
            basin += comp_size[c]
            for p in reverse[c]:
                if stamp[p] != mark:
                    stamp[p] = mark
                    stack.append(p)
        total_basin += basin
        states = frozenset(comp)
        kind, length = _terminal_kind(graph, states, u_masks)
        attractors.append(
            Attractor(
                states=states,
                kind=kind,
                length=length,
                instabilities=tuple(sorted(u_masks[x].bit_count() for x in states)),
                basin_size=basin,
            )
        )
    return AttractorReport(
        mode=graph.mode,
        n=graph.n,
        attractors=_sort_attractors(attractors, graph.n),
        basins_overlap=total_basin > size,
    )


def _terminal_kind(
    graph: TransitionGraph, states: frozenset[State], u_masks: list[int]
) -> tuple[str, Optional[int]]:
    if len(states) == 1:
        x = next(iter(states))
        if not u_masks[x]:
            return "fixed_point", None
        # unreachable for the modes built here; kept for safety
        return "terminal_scc", None
    if graph.deterministic:
        return "limit_cycle", len(states)
    return "terminal_scc", None


def render_report(report: AttractorReport, show_states: bool = False) -> str:
    """One line per attractor, in the documented stable format."""
    lines = []
    for k, a in enumerate(report.attractors):
        kind = f"limit_cycle({a.length})" if a.kind == "limit_cycle" else a.kind
        profile = _render_profile(a.instabilities)
        lines.append(
            f"attractor {k}: kind={kind} size={len(a.states)} "
            f"min_state={state_to_str(a.min_state(report.n), report.n)} "
            f"instabilities={profile}"
        )
        if show_states:
            ordered = sorted(state_to_str(s, report.n) for s in a.states)
            lines.append("  states: " + " ".join(ordered))
    return "\n".join(lines)


def _render_profile(instabilities: tuple[int, ...]) -> str:
    counts: dict[int, int] = {}
    for v in instabilities:
        counts[v] = counts.get(v, 0) + 1
    inner = ",".join(f"{v}:{counts[v]}" for v in sorted(counts))
    return "{" + inner + "}"
