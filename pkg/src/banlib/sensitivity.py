"""Synchronism-sensitivity, shortcut classification and precedence emulation.

A synchronous transition (x, D) with |D| >= 2 either merely shortcuts
asynchronous trajectories (its target was already reachable one bit at a
time) or has a lasting effect. A network is synchronism-sensitive when the
attractor family of its general transition graph differs from that of its
asynchronous one; the two facts are reported independently.

Imposed precedence ("u updates systematically before v") substitutes u's
rule into v's. That substitution is how a monotone network can emulate a
non-monotone one, and vice versa; equivalence of the emulation is always
checked by truth tables, never syntactically.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .dynamics import DEFAULT_GENERAL_CAP, bits_of, build_graph
from .attractor import terminal_sccs
from .errors import CapExceededError, InputError
from .formula import Formula, Var, fold_constants, substitute, truth_table, var_indices
from .network import Ban, State, state_to_str


class PrecedenceError(InputError):
    pass


class HiddenVariableError(InputError):
    """The precedence spec leaves a hidden automaton in a visible rule."""


@dataclass(frozen=True)
class SyncTransitionVerdict:
    source: State
    target: State
    update_set: tuple[int, ...]
    shortcut: bool  # False = lasting effect

    @property
    def verdict(self) -> str:
        return "shortcut" if self.shortcut else "lasting"

    def render(self, n: int) -> str:
        label = "{" + ",".join(str(i) for i in self.update_set) + "}"
        return f"{state_to_str(self.source, n)} --{label}--> {state_to_str(self.target, n)}"


@dataclass(frozen=True)
class PrecedenceSpec:
    """Ordered (u before v) constraints; duplicates collapse, cycles refuse."""

    constraints: tuple[tuple[int, int], ...]

    def __post_init__(self):
        deduped = []
        seen = set()
        for pair in self.constraints:
            if pair not in seen:
                seen.add(pair)
                deduped.append(pair)
        object.__setattr__(self, "constraints", tuple(deduped))
        cycle = self._find_cycle()
        if cycle is not None:
            pretty = " < ".join(str(v) for v in cycle)
            raise PrecedenceError(f"precedence constraints are cyclic: {pretty}")

    def _find_cycle(self) -> Optional[list[int]]:
        adjacency: dict[int, list[int]] = {}
        for u, v in self.constraints:
            adjacency.setdefault(u, []).append(v)
        WHITE, GRAY, BLACK = 0, 1, 2
        color: dict[int, int] = {}
        trail: list[int] = []

        def visit(node: int) -> Optional[list[int]]:
            color[node] = GRAY
            trail.append(node)
            for succ in adjacency.get(node, ()):
                state = color.get(succ, WHITE)
                if state == GRAY:
                    return trail[trail.index(succ):] + [succ]
                if state == WHITE:
                    found = visit(succ)
                    if found:
                        return found
            trail.pop()
            color[node] = BLACK
            return None

        for start in list(adjacency):
            if color.get(start, WHITE) == WHITE:
                found = visit(start)
                if found:
                    return found
        return None

    def before(self, v: int) -> tuple[int, ...]:
        """Automata whose update is imposed strictly before v's."""
        return tuple(u for u, w in self.constraints if w == v)


EMPTY_PRECEDENCE = PrecedenceSpec(())


def parse_precedence(text: str, names: Sequence[str]) -> PrecedenceSpec:
    """Parse `u<v` pairs, comma-separated, over automaton names."""
    text = text.strip()
    if not text:
        return EMPTY_PRECEDENCE
    index = {name: i for i, name in enumerate(names)}
    constraints = []
    for chunk in text.split(","):
        left, sep, right = chunk.partition("<")
        if not sep:
            raise PrecedenceError(f"bad precedence pair {chunk!r}; expected u<v")
        u, v = left.strip(), right.strip()
        for name in (u, v):
            if name not in index:
                raise PrecedenceError(f"unknown automaton {name!r} in precedence spec")
        constraints.append((index[u], index[v]))
    return PrecedenceSpec(tuple(constraints))


def classify_sync_transitions(
    ban: Ban, max_n: Optional[int] = None
) -> list[SyncTransitionVerdict]:
    """Classify every (x, D) with D within U(x) and |D| >= 2.

    A transition is a shortcut iff its target is reachable from x in the
    asynchronous graph. Output order: sources ascending by state string,
    labels ascending.
    """
    graph = build_graph(ban, "async", max_n=_cap(ban, max_n))
    u_masks = graph.u_masks()
    size = graph.size
    stamp = [0] * size
    mark = 0
    verdicts = []
    for x in graph.state_order():
        u = u_masks[x]
        if u.bit_count() < 2:
            continue
        mark += 1
        stamp[x] = mark
        stack = [x]
        while stack:
            v = stack.pop()
            m = u_masks[v]
            while m:
                low = m & -m
                m ^= low
                w = v ^ low
                if stamp[w] != mark:
                    stamp[w] = mark
                    stack.append(w)
        labels = sorted(
            bits_of(m) for m in _proper_subsets(u) if m.bit_count() >= 2
        )
        for d in labels:
            y = x
            for i in d:
                y ^= 1 << i
            verdicts.append(
                SyncTransitionVerdict(x, y, d, shortcut=stamp[y] == mark)
            )
    return verdicts


def _proper_subsets(mask: int):
    m = mask
    while m:
        yield m
        m = (m - 1) & mask


def _cap(ban: Ban, max_n: Optional[int]) -> int:
    return DEFAULT_GENERAL_CAP if max_n is None else max_n


@dataclass(frozen=True)
class SensitivityReport:
    """Binary verdict plus the evidence behind it."""

    sensitive: bool
    async_families: frozenset[frozenset[State]]
    general_families: frozenset[frozenset[State]]
    lasting: tuple[SyncTransitionVerdict, ...]

    def async_only(self) -> tuple[frozenset[State], ...]:
        return _sorted_families(self.async_families - self.general_families)

    def general_only(self) -> tuple[frozenset[State], ...]:
        return _sorted_families(self.general_families - self.async_families)


def _sorted_families(families) -> tuple[frozenset[State], ...]:
    return tuple(sorted(families, key=lambda s: (len(s), sorted(s))))


def is_synchronism_sensitive(ban: Ban, max_n: Optional[int] = None) -> SensitivityReport:
    """Does adding synchronous updates change the attractor family?

    Sensitive iff the terminal-SCC state sets of the general graph differ
    from those of the asynchronous graph. Lasting transitions are reported
    alongside but not assumed to coincide with sensitivity.
    """
    cap = _cap(ban, max_n)
    async_report = terminal_sccs(build_graph(ban, "async", max_n=cap))
    general_report = terminal_sccs(build_graph(ban, "general", max_n=cap))
    fam_a = async_report.state_families()
    fam_g = general_report.state_families()
    lasting = tuple(
        v for v in classify_sync_transitions(ban, max_n=cap) if not v.shortcut
    )
    return SensitivityReport(
        sensitive=fam_a != fam_g,
        async_families=fam_a,
        general_families=fam_g,
        lasting=lasting,
    )


# -- precedence-based emulation ----------------------------------------------

def effective_function(ban: Ban, spec: PrecedenceSpec, v: int) -> Formula:
    """Rule of v once every imposed-before automaton's rule is substituted in.

    Each u before v is replaced by u's own effective function (constraints
    resolve transitively); the result is simplified by constant folding
    only.
    """
    if not 0 <= v < ban.n:
        raise PrecedenceError(f"automaton index {v} outside 0..{ban.n - 1}")
    memo: dict[int, Formula] = {}

    def effective(w: int) -> Formula:
        if w in memo:
            return memo[w]
        befores = spec.before(w)
        f = ban.functions[w]
        if befores:
            # no constraints into w means identity, not even folding
            f = fold_constants(substitute(f, {u: effective(u) for u in befores}))
        memo[w] = f
        return f

    return effective(v)


@dataclass(frozen=True)
class EmulationReport:
    equivalent: bool
    # first differing visible state per mismatching target automaton
    mismatches: tuple[tuple[int, State], ...]


def emulation_equivalent(
    target: Ban,
    host: Ban,
    spec: PrecedenceSpec,
    hidden: frozenset[int] = frozenset(),
) -> EmulationReport:
    """Does the host, under the imposed precedence and with the hidden
    automata erased, compute exactly the target's rules?

    The i-th visible host automaton corresponds to the i-th target
    automaton. Hidden variables must be eliminated by the substitution
    itself; if one survives in a visible effective rule the comparison is
    refused. Equality is pointwise over all visible states.
    """
    for h in hidden:
        if not 0 <= h < host.n:
            raise InputError(f"hidden automaton index {h} outside 0..{host.n - 1}")
    visible = [i for i in range(host.n) if i not in hidden]
    if len(visible) != target.n:
        raise InputError(
            f"host has {len(visible)} visible automata but target has {target.n}"
        )
    remap = {h: Var(t) for t, h in enumerate(visible)}

    mismatches = []
    for t_index, h_index in enumerate(visible):
        effective = effective_function(host, spec, h_index)
        survivors = sorted(var_indices(effective) & hidden)
        if survivors:
            pretty = ", ".join(host.names[s] for s in survivors)
            raise HiddenVariableError(
                f"hidden automaton {pretty} survives in the effective rule of "
                f"{host.names[h_index]!r}; the precedence spec does not eliminate it"
            )
        relabeled = substitute(effective, remap)
        host_table = truth_table(relabeled, target.n)
        target_table = truth_table(target.functions[t_index], target.n)
        diff = host_table ^ target_table
        if diff:
            first = (diff & -diff).bit_length() - 1
            mismatches.append((t_index, first))
    return EmulationReport(equivalent=not mismatches, mismatches=tuple(mismatches))
