"""Boolean automata networks and their signed interaction graphs.

A Ban is an ordered list of named automata with one update function each.
Indices are 0-based everywhere; display goes through the declared names.
States are plain ints: bit i of the int is automaton i's current state, and
the string form writes automaton 0 leftmost, so "1100" means
x0=1, x1=1, x2=0, x3=0.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import NamedTuple, Optional

from .errors import InputError
from .formula import (
    ArcSign,
    Formula,
    Not,
    Var,
    arc_sign,
    evaluate,
    parse,
    semantic_deps,
    var_indices,
)

State = int


class NetworkError(InputError):
    pass


def state_to_str(x: State, n: int) -> str:
    return "".join("1" if (x >> i) & 1 else "0" for i in range(n))


def str_to_state(text: str) -> State:
    """Parse a state string; width is the string length."""
    if not text or any(c not in "01" for c in text):
        raise NetworkError(f"state string must be non-empty over 0/1, got {text!r}")
    x = 0
    for i, c in enumerate(text):
        if c == "1":
            x |= 1 << i
    return x


def state_key(x: State, n: int) -> str:
    """Sort key realizing the external state order (string order)."""
    return state_to_str(x, n)


_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


@dataclass(frozen=True)
class Ban:
    """A Boolean automata network: names[i] is automaton i, functions[i] its rule."""

    names: tuple[str, ...]
    functions: tuple[Formula, ...]

    def __post_init__(self):
        n = len(self.names)
        if n == 0:
            raise NetworkError("a network needs at least one automaton")
        if len(self.functions) != n:
            raise NetworkError(
                f"{n} names but {len(self.functions)} functions"
            )
        seen = set()
        for name in self.names:
            if not _NAME_RE.fullmatch(name):
                raise NetworkError(f"invalid automaton name {name!r}")
            if name in seen:
                raise NetworkError(f"duplicate automaton name {name!r}")
            seen.add(name)
        for j, f in enumerate(self.functions):
            bad = [i for i in var_indices(f) if not 0 <= i < n]
            if bad:
                raise NetworkError(
                    f"function of {self.names[j]!r} references automaton index "
                    f"{min(bad)} but n={n}"
                )

    @property
    def n(self) -> int:
        return len(self.names)

    def index_of(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise NetworkError(f"no automaton named {name!r}") from None


class Arc(NamedTuple):
    source: int
    target: int
    sign: ArcSign


@dataclass(frozen=True)
class SignedDigraph:
    """Interaction graph: arc (i, j) iff automaton j's rule depends on x_i."""

    n: int
    arcs: tuple[Arc, ...]

    def sign(self, source: int, target: int) -> Optional[ArcSign]:
        for arc in self.arcs:
            if arc.source == source and arc.target == target:
                return arc.sign
        return None

    def arc_pairs(self) -> tuple[tuple[int, int], ...]:
        return tuple((a.source, a.target) for a in self.arcs)


@dataclass(frozen=True)
class SignedCycle:
    """A simple directed cycle, stored as its rotation starting at min vertex.

    `negative` is None when the cycle runs through a non-monotone arc; such
    arcs carry no parity.
    """

    vertices: tuple[int, ...]
    negative: Optional[bool]
    contains_nonmonotone: bool

    @property
    def length(self) -> int:
        return len(self.vertices)


def unstable_set(ban: Ban, x: State) -> frozenset[int]:
    """U(x): automata whose rule disagrees with their current state."""
    return frozenset(
        i for i, f in enumerate(ban.functions) if evaluate(f, x) != ((x >> i) & 1)
    )


def build_igraph(ban: Ban) -> SignedDigraph:
    """Signed interaction graph from exact semantic dependencies."""
    arcs = []
    for j, f in enumerate(ban.functions):
        for i in sorted(semantic_deps(f, ban.n)):
            sign = arc_sign(f, i, ban.n)
            assert sign is not None  # i is a semantic dependency
            arcs.append(Arc(i, j, sign))
    arcs.sort(key=lambda a: (a.source, a.target))
    return SignedDigraph(ban.n, tuple(arcs))


def enumerate_cycles(g: SignedDigraph, max_len: int) -> list[SignedCycle]:
    """All simple directed cycles of length <= max_len.

    Anchored DFS: every cycle is found once, from its minimal vertex, only
    walking through larger vertices. The cap is mandatory because simple
    cycles are exponential in general.
    """
    if not 0 <= max_len <= g.n:
        raise NetworkError(f"max_len must be in 0..{g.n}, got {max_len}")
    adjacency: dict[int, list[int]] = {v: [] for v in range(g.n)}
    sign_of = {(a.source, a.target): a.sign for a in g.arcs}
    for arc in g.arcs:
        adjacency[arc.source].append(arc.target)
    for targets in adjacency.values():
        targets.sort()

    cycles: list[SignedCycle] = []

    def classify(vertices: tuple[int, ...]) -> SignedCycle:
        signs = [
            sign_of[(vertices[k], vertices[(k + 1) % len(vertices)])]
            for k in range(len(vertices))
        ]
        if any(s is ArcSign.NON_MONOTONE for s in signs):
            return SignedCycle(vertices, None, True)
        odd = sum(s is ArcSign.NEGATIVE for s in signs) % 2 == 1
        return SignedCycle(vertices, odd, False)

    def dfs(start: int, v: int, path: list[int], on_path: set[int]):
        for w in adjacency[v]:
            if w == start:
                cycles.append(classify(tuple(path)))
            elif w > start and w not in on_path and len(path) < max_len:
                path.append(w)
                on_path.add(w)
                dfs(start, w, path, on_path)
                on_path.remove(w)
                path.pop()

    for start in range(g.n):
        if max_len >= 1:
            dfs(start, start, [start], {start})
    cycles.sort(key=lambda c: (c.length, c.vertices))
    return cycles


def gen_cycle(n: int, negative: bool) -> Ban:
    """Boolean automata cycle a1..an: each copies its predecessor, and a1
    reads an, negated iff `negative`."""
    if n < 1:
        raise NetworkError(f"cycle size must be >= 1, got {n}")
    names = tuple(f"a{i + 1}" for i in range(n))
    closing: Formula = Not(Var(n - 1)) if negative else Var(n - 1)
    functions = (closing,) + tuple(Var(k - 1) for k in range(1, n))
    return Ban(names, functions)


_FIGURES = {
    "fig2": (
        ("x0", "x1", "x2", "x3"),
        ("x2 | (x0 & !x1)", "x3 | (!x0 & x1)", "!x0 & x1", "x0 & !x1"),
    ),
    # left network drops the disconnected or-automaton; it has no influence
    # on automata 1..3 and the emulation compares visible automata only
    "fig3_left": (
        ("x1", "x2", "x3"),
        ("x2 ^ x3", "x2", "x3"),
    ),
    "fig3_right": (
        ("x1", "x2", "x3", "x4"),
        ("(!x2 | !x3) & x4", "x2", "x3", "x2 | x3"),
    ),
    "fig5_left": (
        ("i", "j", "k"),
        ("j ^ j", "j", "j"),
    ),
    "fig5_right": (
        ("i", "j", "k"),
        ("j ^ k", "j", "j"),
    ),
}


def gen_figure_ban(which: str) -> Ban:
    """One of the bundled worked examples: fig2, fig3_left, fig3_right,
    fig5_left, fig5_right."""
    try:
        names, exprs = _FIGURES[which]
    except KeyError:
        known = ", ".join(sorted(_FIGURES))
        raise NetworkError(f"unknown figure id {which!r} (known: {known})") from None
    return Ban(names, tuple(parse(e, names) for e in exprs))
