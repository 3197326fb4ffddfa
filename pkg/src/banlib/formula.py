"""Boolean expression trees for local update functions.

A formula is an immutable tree of Const/Var/Not/And/Or/Xor nodes; Var holds
the 0-based index of the automaton it reads. Dependency and monotony
analysis are exact: they work on full truth tables encoded as Python
integers where bit s is the value of the function on state s. At desk
scale (n <= 20) this beats any symbolic representation for simplicity.

Expression grammar (precedence NOT > AND > XOR > OR, left-associative):

    expr  := or
    or    := xor {"|" xor}
    xor   := and {"^" and}
    and   := unary {"&" unary}
    unary := "!" unary | atom
    atom  := ident | "0" | "1" | "(" expr ")"
    ident := [A-Za-z_][A-Za-z0-9_]*
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache, reduce
from typing import Callable, Mapping, Optional, Sequence

from .errors import InputError


class FormulaSyntaxError(InputError):
    """Malformed expression text; line and column are 1-based."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{line}:{column}: {message}")
        self.line = line
        self.column = column


class UnknownVariableError(InputError):
    def __init__(self, name: str, line: int, column: int):
        super().__init__(f"{line}:{column}: unknown variable '{name}'")
        self.name = name
        self.line = line
        self.column = column


class ArcSign(Enum):
    """Monotony of one input of a Boolean function."""

    POSITIVE = "+"
    NEGATIVE = "-"
    NON_MONOTONE = "~"

    @property
    def symbol(self) -> str:
        return self.value


class Formula:
    __slots__ = ()

    def __str__(self) -> str:
        return to_text(self)


@dataclass(frozen=True, slots=True)
class Const(Formula):
    value: int

    def __post_init__(self):
        if self.value not in (0, 1):
            raise ValueError(f"constant must be 0 or 1, got {self.value!r}")


@dataclass(frozen=True, slots=True)
class Var(Formula):
    index: int


@dataclass(frozen=True, slots=True)
class Not(Formula):
    child: Formula


class _Nary(Formula):
    __slots__ = ()

    def __post_init__(self):
        if len(self.children) < 2:  # type: ignore[attr-defined]
            raise ValueError(f"{type(self).__name__} needs at least 2 children")


@dataclass(frozen=True, slots=True)
class And(_Nary):
    children: tuple[Formula, ...]


@dataclass(frozen=True, slots=True)
class Or(_Nary):
    children: tuple[Formula, ...]


@dataclass(frozen=True, slots=True)
class Xor(_Nary):
    children: tuple[Formula, ...]


def evaluate(formula: Formula, x: int) -> int:
    """Value of the formula on state x (bit i of x = automaton i's state)."""
    if isinstance(formula, Const):
        return formula.value
    if isinstance(formula, Var):
        return (x >> formula.index) & 1
    if isinstance(formula, Not):
        return 1 - evaluate(formula.child, x)
    if isinstance(formula, And):
        return int(all(evaluate(c, x) for c in formula.children))
    if isinstance(formula, Or):
        return int(any(evaluate(c, x) for c in formula.children))
    if isinstance(formula, Xor):
        return reduce(lambda a, b: a ^ b, (evaluate(c, x) for c in formula.children))
    raise TypeError(f"not a formula node: {formula!r}")


def var_indices(formula: Formula) -> frozenset[int]:
    """Indices appearing syntactically in the tree (not necessarily essential)."""
    out: set[int] = set()
    stack = [formula]
    while stack:
        node = stack.pop()
        if isinstance(node, Var):
            out.add(node.index)
        elif isinstance(node, Not):
            stack.append(node.child)
        elif isinstance(node, _Nary):
            stack.extend(node.children)
    return frozenset(out)


# -- truth tables -----------------------------------------------------------

@lru_cache(maxsize=None)
def variable_tables(n: int) -> tuple[int, ...]:
    """Truth table of each projection x -> x_j, over all 2**n states."""
    size = 1 << n
    tables = []
    for j in range(n):
        period = 1 << (j + 1)
        unit = ((1 << (1 << j)) - 1) << (1 << j)  # one period: 2**j zeros then ones
        table = unit
        width = period
        while width < size:
            table |= table << width
            width <<= 1
        tables.append(table)
    return tuple(tables)


def eval_on_tables(formula: Formula, tables: Sequence[int], full: int) -> int:
    """Truth table of the formula when Var j stands for the function tables[j].

    `full` is the all-ones table; it bounds complement so tables stay finite.
    """
    if isinstance(formula, Const):
        return full if formula.value else 0
    if isinstance(formula, Var):
        return tables[formula.index]
    if isinstance(formula, Not):
        return full ^ eval_on_tables(formula.child, tables, full)
    kids = (eval_on_tables(c, tables, full) for c in formula.children)
    if isinstance(formula, And):
        return reduce(lambda a, b: a & b, kids)
    if isinstance(formula, Or):
        return reduce(lambda a, b: a | b, kids)
    if isinstance(formula, Xor):
        return reduce(lambda a, b: a ^ b, kids)
    raise TypeError(f"not a formula node: {formula!r}")


def truth_table(formula: Formula, n: int) -> int:
    """Full truth table over B**n as an integer; bit s = value on state s."""
    full = (1 << (1 << n)) - 1
    return eval_on_tables(formula, variable_tables(n), full)


def semantic_deps(formula: Formula, n: int) -> frozenset[int]:
    """Automata the function actually depends on.

    i is a dependency iff flipping bit i changes the value on some state;
    syntactic appearances that cancel out (x_i ^ x_i) do not count.
    """
    table = truth_table(formula, n)
    full = (1 << (1 << n)) - 1
    var_tabs = variable_tables(n)
    deps = set()
    for i in range(n):
        low_states = full & ~var_tabs[i]  # states with bit i clear
        if (table ^ (table >> (1 << i))) & low_states:
            deps.add(i)
    return frozenset(deps)


def arc_sign(formula: Formula, i: int, n: int) -> Optional[ArcSign]:
    """Monotony of the function in input i, or None when i is not essential.

    POSITIVE: flipping x_i 0->1 never decreases the value and sometimes
    increases it; NEGATIVE dually; NON_MONOTONE when both witnesses exist.
    """
    table = truth_table(formula, n)
    full = (1 << (1 << n)) - 1
    low_states = full & ~variable_tables(n)[i]
    high = table >> (1 << i)  # value with bit i set, aligned on low positions
    increasing = ~table & high & low_states
    decreasing = table & ~high & low_states
    if increasing and decreasing:
        return ArcSign.NON_MONOTONE
    if increasing:
        return ArcSign.POSITIVE
    if decreasing:
        return ArcSign.NEGATIVE
    return None


# -- tree surgery -----------------------------------------------------------

def substitute(formula: Formula, mapping: Mapping[int, Formula]) -> Formula:
    """Simultaneously replace Var i by mapping[i] wherever it occurs."""
    if isinstance(formula, Const):
        return formula
    if isinstance(formula, Var):
        return mapping.get(formula.index, formula)
    if isinstance(formula, Not):
        return Not(substitute(formula.child, mapping))
    return type(formula)(tuple(substitute(c, mapping) for c in formula.children))


def fold_constants(formula: Formula) -> Formula:
    """Evaluate away constant subterms; no other simplification is applied.

    In particular x_j ^ x_j is left alone: whether a function is really
    constant is a semantic question, answered by truth tables.
    """
    if isinstance(formula, (Const, Var)):
        return formula
    if isinstance(formula, Not):
        child = fold_constants(formula.child)
        if isinstance(child, Const):
            return Const(1 - child.value)
        return Not(child)
    kids = [fold_constants(c) for c in formula.children]
    if isinstance(formula, And):
        if any(isinstance(k, Const) and k.value == 0 for k in kids):
            return Const(0)
        kids = [k for k in kids if not isinstance(k, Const)]
        if not kids:
            return Const(1)
        return kids[0] if len(kids) == 1 else And(tuple(kids))
    if isinstance(formula, Or):
        if any(isinstance(k, Const) and k.value == 1 for k in kids):
            return Const(1)
        kids = [k for k in kids if not isinstance(k, Const)]
        if not kids:
            return Const(0)
        return kids[0] if len(kids) == 1 else Or(tuple(kids))
    # Xor: constants contribute only their parity
    parity = sum(k.value for k in kids if isinstance(k, Const)) & 1
    kids = [k for k in kids if not isinstance(k, Const)]
    if not kids:
        return Const(parity)
    core = kids[0] if len(kids) == 1 else Xor(tuple(kids))
    return Not(core) if parity else core


# -- printing ---------------------------------------------------------------

_PREC = {Or: 0, Xor: 1, And: 2, Not: 3, Var: 4, Const: 4}
_JOINER = {Or: " | ", Xor: " ^ ", And: " & "}


def to_text(formula: Formula, names: Optional[Sequence[str]] = None) -> str:
    """Render in the concrete syntax; parses back to the identical tree.

    Without `names`, Var i prints as the canonical identifier x<i>.
    """

    def name_of(i: int) -> str:
        return names[i] if names is not None else f"x{i}"

    def render(node: Formula) -> str:
        if isinstance(node, Const):
            return str(node.value)
        if isinstance(node, Var):
            return name_of(node.index)
        if isinstance(node, Not):
            inner = render(node.child)
            if _PREC[type(node.child)] <= 2:
                inner = f"({inner})"
            return f"!{inner}"
        own = _PREC[type(node)]
        parts = []
        for child in node.children:
            text = render(child)
            if _PREC[type(child)] <= own:
                text = f"({text})"
            parts.append(text)
        return _JOINER[type(node)].join(parts)

    return render(formula)


# -- parsing ----------------------------------------------------------------

_IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_CANONICAL_RE = re.compile(r"x([0-9]+)\Z")

Resolver = Callable[[str, int, int], int]


def _tokenize(text: str) -> list[tuple[str, str, int, int]]:
    tokens = []
    line, col = 1, 1
    i = 0
    while i < len(text):
        c = text[i]
        if c == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if c in " \t\r":
            col += 1
            i += 1
            continue
        if c in "01":
            tokens.append(("const", c, line, col))
            col += 1
            i += 1
            continue
        if c in "!&^|()":
            tokens.append((c, c, line, col))
            col += 1
            i += 1
            continue
        match = _IDENT_RE.match(text, i)
        if match:
            tokens.append(("ident", match.group(), line, col))
            col += len(match.group())
            i = match.end()
            continue
        raise FormulaSyntaxError(f"unexpected character {c!r}", line, col)
    tokens.append(("eof", "", line, col))
    return tokens


class _Parser:
    def __init__(self, tokens: list[tuple[str, str, int, int]], resolve: Resolver):
        self.tokens = tokens
        self.pos = 0
        self.resolve = resolve

    def peek(self) -> tuple[str, str, int, int]:
        return self.tokens[self.pos]

    def take(self) -> tuple[str, str, int, int]:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def parse(self) -> Formula:
        node = self.expr()
        kind, value, line, col = self.peek()
        if kind != "eof":
            raise FormulaSyntaxError(f"unexpected {value!r}", line, col)
        return node

    def expr(self) -> Formula:
        return self.or_()

    def _chain(self, op: str, sub, node_type) -> Formula:
        items = [sub()]
        while self.peek()[0] == op:
            self.take()
            items.append(sub())
        return items[0] if len(items) == 1 else node_type(tuple(items))

    def or_(self) -> Formula:
        return self._chain("|", self.xor, Or)

    def xor(self) -> Formula:
        return self._chain("^", self.and_, Xor)

    def and_(self) -> Formula:
        return self._chain("&", self.unary, And)

    def unary(self) -> Formula:
        if self.peek()[0] == "!":
            self.take()
            return Not(self.unary())
        return self.atom()

    def atom(self) -> Formula:
        kind, value, line, col = self.take()
        if kind == "const":
            return Const(int(value))
        if kind == "ident":
            return Var(self.resolve(value, line, col))
        if kind == "(":
            node = self.expr()
            kind, value, line, col = self.take()
            if kind != ")":
                shown = repr(value) if kind != "eof" else "end of input"
                raise FormulaSyntaxError(f"expected ')', found {shown}", line, col)
            return node
        shown = repr(value) if kind != "eof" else "end of input"
        raise FormulaSyntaxError(f"expected expression, found {shown}", line, col)


def _canonical_resolver(name: str, line: int, col: int) -> int:
    match = _CANONICAL_RE.fullmatch(name)
    if not match:
        raise UnknownVariableError(name, line, col)
    return int(match.group(1))


def parse(text: str, names: Optional[Sequence[str]] = None) -> Formula:
    """Parse expression text into a Formula.

    `names` maps position to automaton name; when omitted, only the
    canonical identifiers x0, x1, ... are accepted. Unknown identifiers
    raise UnknownVariableError with their location.
    """
    if names is None:
        resolve: Resolver = _canonical_resolver
    else:
        table = {name: i for i, name in enumerate(names)}

        def resolve(name: str, line: int, col: int) -> int:
            if name not in table:
                raise UnknownVariableError(name, line, col)
            return table[name]

    return _Parser(_tokenize(text), resolve).parse()
