"""Transition semantics over the full state space B**n.

Three relations from the literature plus one derived family:

  parallel  - functional graph of F(x) = (f_1(x), ..., f_n(x))
  async     - one edge per unstable automaton, flipping exactly that bit
  general   - one edge per non-empty subset of U(x), flipping that subset
  bsus      - functional graph of the one-period map of a block schedule

Successor functions are the primitive; edge lists are iterated lazily in a
deterministic order (sources ascending by state string, labels ascending as
sorted tuples) so text and DOT outputs are byte-stable. Bulk work runs on
whole-function truth tables held in single Python integers, which keeps a
full n=16 asynchronous analysis within seconds.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

from .errors import CapExceededError, InputError
from .formula import evaluate, eval_on_tables, truth_table, variable_tables
from .network import Ban, State, state_to_str
from .schedule import BlockSchedule

DEFAULT_STATE_CAP = 20  # parallel / async / bsus
DEFAULT_GENERAL_CAP = 16  # successor sets are exponential in |U(x)|
DEFAULT_PAIR_CAP = 12  # non-expansivity enumerates state pairs

MODES = ("parallel", "async", "general", "bsus")


def parallel_step(ban: Ban, x: State) -> State:
    """F(x): every automaton updated at once."""
    y = 0
    for i, f in enumerate(ban.functions):
        if evaluate(f, x):
            y |= 1 << i
    return y


def async_successors(ban: Ban, x: State) -> list[tuple[State, int]]:
    """One successor per unstable automaton, in ascending automaton order."""
    out = []
    for i, f in enumerate(ban.functions):
        if evaluate(f, x) != ((x >> i) & 1):
            out.append((x ^ (1 << i), i))
    return out


def general_successors(ban: Ban, x: State) -> list[tuple[State, tuple[int, ...]]]:
    """One successor per non-empty subset of U(x), label-ascending.

    The vacuous self-pair (x, x) is not emitted; reachability treats every
    state as reachable from itself anyway.
    """
    unstable = [i for i, f in enumerate(ban.functions)
                if evaluate(f, x) != ((x >> i) & 1)]
    subsets: list[tuple[int, ...]] = []
    mask_all = 0
    for i in unstable:
        mask_all |= 1 << i
    m = mask_all
    while m:
        subsets.append(tuple(i for i in unstable if m >> i & 1))
        m = (m - 1) & mask_all
    subsets.sort()
    out = []
    for d in subsets:
        y = x
        for i in d:
            y ^= 1 << i
        out.append((y, d))
    return out


# -- truth-table plumbing ----------------------------------------------------

def function_tables(ban: Ban) -> list[int]:
    """Truth table of every local function."""
    return [truth_table(f, ban.n) for f in ban.functions]


def _tables_to_states(tables: Sequence[int], n: int) -> list[int]:
    """Transpose n truth tables into one n-bit word per state."""
    size = 1 << n
    nbytes = (size + 7) // 8
    out = [0] * size
    byte_bits = _BYTE_BITS
    for i, table in enumerate(tables):
        flag = 1 << i
        base = 0
        for byte in table.to_bytes(nbytes, "little"):
            if byte:
                for b in byte_bits[byte]:
                    out[base + b] |= flag
            base += 8
    return out

_BYTE_BITS = [tuple(b for b in range(8) if k >> b & 1) for k in range(256)]


def instability_masks(ban: Ban) -> list[int]:
    """For every state x, the bitmask of U(x)."""
    n = ban.n
    var_tabs = variable_tables(n)
    disagree = [truth_table(f, n) ^ var_tabs[i] for i, f in enumerate(ban.functions)]
    return _tables_to_states(disagree, n)


def parallel_table(ban: Ban) -> list[int]:
    """F(x) for every state x."""
    return _tables_to_states(function_tables(ban), ban.n)


def period_table(ban: Ban, schedule: BlockSchedule) -> list[int]:
    """One-period map of a block schedule, for every state at once.

    Walks the blocks over truth tables: after each block, table i holds
    automaton i's value as a function of the state at the start of the
    period.
    """
    schedule.validate_for(ban.n)
    n = ban.n
    full = (1 << (1 << n)) - 1
    current = list(variable_tables(n))
    for block in schedule.blocks:
        updated = {i: eval_on_tables(ban.functions[i], current, full) for i in block}
        for i, table in updated.items():
            current[i] = table
    return _tables_to_states(current, n)


def bits_of(mask: int) -> tuple[int, ...]:
    """Ascending positions of the set bits."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return tuple(out)


# -- transition graphs -------------------------------------------------------

class TransitionGraph:
    """Transition relation over all 2**n states, traversed implicitly.

    `successors(x)` returns (target, label) pairs where the label is the
    sorted tuple of updated automata D(x, y); `targets(x)` drops labels for
    reachability work. Deterministic modes (parallel, bsus) have out-degree
    exactly one, with a () labeled self-loop at fixed points.
    """

    def __init__(self, ban: Ban, mode: str, schedule: Optional[BlockSchedule] = None):
        if mode not in MODES:
            raise InputError(f"unknown mode {mode!r}; expected one of {MODES}")
        if mode == "bsus":
            if schedule is None:
                raise InputError("bsus mode needs a block schedule")
            schedule.validate_for(ban.n)
        elif schedule is not None:
            raise InputError(f"mode {mode!r} does not take a schedule")
        self.ban = ban
        self.mode = mode
        self.schedule = schedule
        self.n = ban.n
        self.size = 1 << ban.n
        self._u_masks: Optional[list[int]] = None
        self._step: Optional[list[int]] = None
        self._order: Optional[list[int]] = None

    @property
    def deterministic(self) -> bool:
        return self.mode in ("parallel", "bsus")

    def u_masks(self) -> list[int]:
        if self._u_masks is None:
            self._u_masks = instability_masks(self.ban)
        return self._u_masks

    def step_table(self) -> list[int]:
        if self._step is None:
            if self.mode == "parallel":
                self._step = parallel_table(self.ban)
            elif self.mode == "bsus":
                assert self.schedule is not None
                self._step = period_table(self.ban, self.schedule)
            else:
                raise InputError(f"mode {self.mode!r} is not deterministic")
        return self._step

    def state_order(self) -> list[int]:
        """All states, ascending by their string form (automaton 0 leftmost)."""
        if self._order is None:
            n = self.n
            self._order = sorted(range(self.size), key=lambda s: state_to_str(s, n))
        return self._order

    def targets(self, x: State) -> list[State]:
        if self.deterministic:
            return [self.step_table()[x]]
        u = self.u_masks()[x]
        if self.mode == "async":
            out = []
            m = u
            while m:
                low = m & -m
                out.append(x ^ low)
                m ^= low
            return out
        out = []
        m = u
        while m:
            out.append(x ^ m)
            m = (m - 1) & u
        return out

    def successors(self, x: State) -> list[tuple[State, tuple[int, ...]]]:
        if self.deterministic:
            y = self.step_table()[x]
            return [(y, bits_of(x ^ y))]
        u = self.u_masks()[x]
        if self.mode == "async":
            return [(x ^ (1 << i), (i,)) for i in bits_of(u)]
        labels = sorted(bits_of(m) for m in _submasks(u))
        out = []
        for d in labels:
            y = x
            for i in d:
                y ^= 1 << i
            out.append((y, d))
        return out

    def edges(self, emit_self_loops: bool = False) -> Iterator[tuple[State, State, tuple[int, ...]]]:
        """All edges, sources ascending by state string, labels ascending.

        Deterministic modes always include their fixed-point self-loops.
        `emit_self_loops` additionally restores the literal () self-loop the
        general relation puts on every state.
        """
        literal = emit_self_loops and self.mode == "general"
        for x in self.state_order():
            if literal:
                yield (x, x, ())
            for y, label in self.successors(x):
                yield (x, y, label)

    def num_edges(self) -> int:
        if self.deterministic:
            return self.size
        total = 0
        if self.mode == "async":
            for u in self.u_masks():
                total += u.bit_count()
        else:
            for u in self.u_masks():
                total += (1 << u.bit_count()) - 1
        return total


def _submasks(mask: int) -> Iterator[int]:
    m = mask
    while m:
        yield m
        m = (m - 1) & mask


def build_graph(
    ban: Ban,
    mode: str,
    schedule: Optional[BlockSchedule] = None,
    max_n: Optional[int] = None,
) -> TransitionGraph:
    """Transition graph of the requested semantics, cap-checked.

    Default caps: n <= 20 for parallel/async/bsus, n <= 16 for general
    (its edge count is sum over states of 2**|U(x)| - 1).
    """
    if max_n is None:
        max_n = DEFAULT_GENERAL_CAP if mode == "general" else DEFAULT_STATE_CAP
    if ban.n > max_n:
        raise CapExceededError(ban.n, max_n, f"{mode} transition graph")
    return TransitionGraph(ban, mode, schedule)


# -- non-expansivity ---------------------------------------------------------

@dataclass(frozen=True)
class NonexpansiveResult:
    nonexpansive: bool
    witness: Optional[tuple[State, State]]  # first violating pair, numeric order


def check_nonexpansive(ban: Ban, max_n: Optional[int] = None) -> NonexpansiveResult:
    """Does Hamming distance never grow under the parallel map F?

    Exhaustive over all unordered state pairs; the first violating pair (in
    ascending numeric order) is returned as the witness.
    """
    cap = DEFAULT_PAIR_CAP if max_n is None else max_n
    if ban.n > cap:
        raise CapExceededError(ban.n, cap, "pairwise non-expansivity check")
    step = parallel_table(ban)
    size = 1 << ban.n
    for x in range(size):
        fx = step[x]
        for y in range(x + 1, size):
            if ((x ^ y).bit_count()) < ((fx ^ step[y]).bit_count()):
                return NonexpansiveResult(False, (x, y))
    return NonexpansiveResult(True, None)


# -- rendering ----------------------------------------------------------------

def format_label(label: tuple[int, ...]) -> str:
    return "{" + ",".join(str(i) for i in label) + "}"


def edge_lines(graph: TransitionGraph, emit_self_loops: bool = False) -> Iterator[str]:
    n = graph.n
    for x, y, label in graph.edges(emit_self_loops):
        yield f"{state_to_str(x, n)} -> {state_to_str(y, n)} [{format_label(label)}]"


def to_dot(graph: TransitionGraph, emit_self_loops: bool = False) -> str:
    """Graphviz text: nodes are state strings, edges carry the update set."""
    n = graph.n
    lines = ["digraph {"]
    for x in graph.state_order():
        lines.append(f'  "{state_to_str(x, n)}";')
    for x, y, label in graph.edges(emit_self_loops):
        lines.append(
            f'  "{state_to_str(x, n)}" -> "{state_to_str(y, n)}"'
            f' [label="{format_label(label)}"];'
        )
    lines.append("}")
    return "\n".join(lines) + "\n"
