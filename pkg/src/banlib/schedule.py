"""Block-sequential update schedules in both of their classical forms.

A schedule is either an ordered list of disjoint blocks covering all
automata (each automaton updated exactly once per period, blocks applied
left to right, members of a block simultaneously), or an arc labeling
nu: A -> {-1,+1} with nu(i,j) = -1 exactly when i is updated strictly
before j. Two block schedules with the same labeling define the same
one-period map; that equivalence is exercised by the test suite rather
than assumed anywhere in this module.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .errors import InputError
from .formula import evaluate
from .network import Ban, SignedDigraph, State
from .scc import strongly_connected_components


class ScheduleError(InputError):
    pass


class InfeasibleNuError(InputError):
    """No block schedule realizes the labeling; carries a witness cycle.

    The witness is a vertex list v0, v1, ..., v0 whose rank constraints
    chain into rank(v0) < rank(v0).
    """

    def __init__(self, cycle: list[int]):
        pretty = " -> ".join(str(v) for v in cycle)
        super().__init__(f"labeling is not block-sequential: constraint cycle {pretty}")
        self.cycle = cycle


@dataclass(frozen=True)
class BlockSchedule:
    """Ordered blocks B_1..B_K; disjointness is checked at construction,
    coverage of the vertex set only against a concrete network."""

    blocks: tuple[frozenset[int], ...]

    def __post_init__(self):
        seen: set[int] = set()
        for block in self.blocks:
            if not block:
                raise ScheduleError("empty block")
            if seen & block:
                dup = sorted(seen & block)[0]
                raise ScheduleError(f"automaton {dup} appears in two blocks")
            seen |= block

    @classmethod
    def parallel(cls, n: int) -> "BlockSchedule":
        return cls((frozenset(range(n)),))

    @classmethod
    def of(cls, *blocks: Iterable[int]) -> "BlockSchedule":
        return cls(tuple(frozenset(b) for b in blocks))

    def members(self) -> frozenset[int]:
        out: set[int] = set()
        for block in self.blocks:
            out |= block
        return frozenset(out)

    def validate_for(self, n: int) -> None:
        members = self.members()
        if members != frozenset(range(n)):
            missing = sorted(set(range(n)) - members)
            extra = sorted(members - set(range(n)))
            parts = []
            if missing:
                parts.append(f"missing automata {missing}")
            if extra:
                parts.append(f"unknown automata {extra}")
            raise ScheduleError("schedule must cover V exactly: " + ", ".join(parts))

    def ranks(self) -> dict[int, int]:
        return {i: k for k, block in enumerate(self.blocks) for i in block}

    def render(self, names: Sequence[str]) -> str:
        return "".join(
            "{" + ",".join(names[i] for i in sorted(block)) + "}"
            for block in self.blocks
        )


class NuLabeling:
    """Arc labeling nu: A -> {-1, +1}; the domain is the arc set itself."""

    def __init__(self, values: Mapping[tuple[int, int], int]):
        for arc, v in values.items():
            if v not in (-1, 1):
                raise ScheduleError(f"nu({arc}) must be -1 or +1, got {v}")
        self._values = dict(values)

    def __getitem__(self, arc: tuple[int, int]) -> int:
        return self._values[arc]

    def __eq__(self, other: object) -> bool:
        return isinstance(other, NuLabeling) and self._values == other._values

    def __repr__(self) -> str:
        inner = ", ".join(
            f"({i},{j}):{v:+d}" for (i, j), v in sorted(self._values.items())
        )
        return f"NuLabeling({{{inner}}})"

    def arcs(self) -> tuple[tuple[int, int], ...]:
        return tuple(sorted(self._values))

    def items(self):
        return self._values.items()


def blocks_to_nu(schedule: BlockSchedule, g: SignedDigraph) -> NuLabeling:
    """nu(i,j) = -1 iff i's block comes strictly before j's."""
    schedule.validate_for(g.n)
    rank = schedule.ranks()
    return NuLabeling(
        {(i, j): -1 if rank[i] < rank[j] else +1 for i, j in g.arc_pairs()}
    )


def nu_equivalent(a: NuLabeling, b: NuLabeling) -> bool:
    if a.arcs() != b.arcs():
        raise ScheduleError("labelings have different arc domains")
    return a == b


def degree_of_synchronism(nu: NuLabeling) -> int:
    """Count of +1 arcs. Heuristic reading of 'how synchronous' a schedule
    is; the parallel schedule maxes it out at |A|."""
    return sum(1 for _, v in nu.items() if v == +1)


def nu_realizable(nu: NuLabeling, n: int) -> BlockSchedule:
    """A block schedule whose labeling equals nu, or InfeasibleNuError.

    Constraints: nu(i,j) = -1 forces rank(i) < rank(j); +1 forces
    rank(i) >= rank(j). Infeasible exactly when the constraint graph has a
    cycle through a strict edge. The returned witness is the coarsest one:
    minimal ranks, equal ranks grouped into one block.
    """
    # edge (u, v, w) encodes rank(v) >= rank(u) + w with w in {0, 1}
    edges: list[tuple[int, int, int]] = []
    for (i, j), v in nu.items():
        if not (0 <= i < n and 0 <= j < n):
            raise ScheduleError(f"arc ({i},{j}) outside 0..{n - 1}")
        if v == -1:
            edges.append((i, j, 1))
        else:
            edges.append((j, i, 0))

    adjacency: dict[int, list[int]] = {v: [] for v in range(n)}
    for u, v, _ in edges:
        adjacency[u].append(v)
    components = strongly_connected_components(n, lambda v: adjacency[v])
    comp_id = [0] * n
    for cid, comp in enumerate(components):
        for v in comp:
            comp_id[v] = cid

    for u, v, w in edges:
        if w == 1 and comp_id[u] == comp_id[v]:
            raise InfeasibleNuError(_witness_cycle(adjacency, comp_id, u, v))

    # condensation is a DAG; components arrive in reverse topological order
    comp_edges: dict[int, list[tuple[int, int]]] = {c: [] for c in range(len(components))}
    for u, v, w in edges:
        if comp_id[u] != comp_id[v]:
            comp_edges[comp_id[v]].append((comp_id[u], w))
    rank = [0] * len(components)
    for cid in range(len(components) - 1, -1, -1):
        for pred, w in comp_edges[cid]:
            rank[cid] = max(rank[cid], rank[pred] + w)

    by_rank: dict[int, set[int]] = {}
    for v in range(n):
        by_rank.setdefault(rank[comp_id[v]], set()).add(v)
    blocks = tuple(frozenset(by_rank[r]) for r in sorted(by_rank))
    return BlockSchedule(blocks)


def _witness_cycle(
    adjacency: dict[int, list[int]], comp_id: list[int], u: int, v: int
) -> list[int]:
    # strict edge u -> v inside one SCC: close it with a path v ~> u
    parent: dict[int, int] = {v: -1}
    queue = [v]
    while queue:
        cur = queue.pop(0)
        if cur == u:
            break
        for w in adjacency[cur]:
            if comp_id[w] == comp_id[u] and w not in parent:
                parent[w] = cur
                queue.append(w)
    path = [u]
    while path[-1] != v:
        path.append(parent[path[-1]])
    path.reverse()  # v ... u
    return [u] + path


def period_function(ban: Ban, schedule: BlockSchedule, x: State) -> State:
    """State after one full period: blocks applied left to right, each block
    updating its members simultaneously on the current state."""
    schedule.validate_for(ban.n)
    current = x
    for block in schedule.blocks:
        updates = [(i, evaluate(ban.functions[i], current)) for i in block]
        for i, value in updates:
            if value:
                current |= 1 << i
            else:
                current &= ~(1 << i)
    return current


_BLOCK_RE = re.compile(r"\{([^{}]*)\}")


def parse_block_schedule(text: str, names: Sequence[str]) -> BlockSchedule:
    """Parse the `{a,b}{c}` syntax; blocks apply left to right."""
    text = text.strip()
    if not text:
        raise ScheduleError("empty schedule spec")
    index = {name: i for i, name in enumerate(names)}
    blocks = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        match = _BLOCK_RE.match(text, pos)
        if not match:
            raise ScheduleError(
                f"bad schedule syntax at {text[pos:]!r}; expected {{name,...}} blocks"
            )
        block = set()
        for part in match.group(1).split(","):
            name = part.strip()
            if name not in index:
                raise ScheduleError(f"unknown automaton {name!r} in schedule")
            block.add(index[name])
        blocks.append(frozenset(block))
        pos = match.end()
    return BlockSchedule(tuple(blocks))
