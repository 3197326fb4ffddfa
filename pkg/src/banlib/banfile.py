"""The .ban network file format.

One automaton per line, `name = expression`; `#` starts a comment and blank
lines are ignored. Automaton index is the order of first definition, and a
rule may reference automata defined later in the file. Every referenced
name must be defined somewhere.
"""
from __future__ import annotations

import os
from typing import Union

from .errors import InputError
from .formula import FormulaSyntaxError, UnknownVariableError, parse, to_text
from .network import Ban, NetworkError


class BanFileError(InputError):
    pass


def loads(text: str) -> Ban:
    """Parse network file text into a Ban."""
    entries: list[tuple[str, str, int]] = []
    names_seen: dict[str, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        name, sep, expr = line.partition("=")
        name = name.strip()
        expr = expr.strip()
        if not sep or not name or not expr:
            raise BanFileError(f"line {lineno}: expected 'name = expression'")
        if name in names_seen:
            raise BanFileError(
                f"line {lineno}: {name!r} already defined on line {names_seen[name]}"
            )
        names_seen[name] = lineno
        entries.append((name, expr, lineno))
    if not entries:
        raise BanFileError("no automaton definitions found")

    names = tuple(name for name, _, _ in entries)
    functions = []
    for name, expr, lineno in entries:
        try:
            functions.append(parse(expr, names))
        except UnknownVariableError as err:
            raise BanFileError(
                f"line {lineno}: rule of {name!r} references undefined "
                f"variable {err.name!r}"
            ) from err
        except FormulaSyntaxError as err:
            raise BanFileError(f"line {lineno}: {err}") from err
    try:
        return Ban(names, tuple(functions))
    except NetworkError as err:
        raise BanFileError(str(err)) from err


def dumps(ban: Ban) -> str:
    """Render a Ban as file text; loads(dumps(b)) reproduces b."""
    lines = [
        f"{name} = {to_text(f, ban.names)}"
        for name, f in zip(ban.names, ban.functions)
    ]
    return "\n".join(lines) + "\n"


def load_path(path: Union[str, os.PathLike]) -> Ban:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            text = handle.read()
    except OSError as err:
        raise BanFileError(f"cannot read {path}: {err}") from err
    try:
        return loads(text)
    except BanFileError as err:
        raise BanFileError(f"{path}: {err}") from err
