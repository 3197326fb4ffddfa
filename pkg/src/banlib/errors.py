"""Exception hierarchy shared across the package.

The CLI maps InputError to exit code 2 and CapExceededError to exit code 3;
everything else is a bug and propagates.
"""


class BanlibError(Exception):
    pass


class InputError(BanlibError):
    """Malformed user input: bad syntax, bad references, bad specs."""


class CapExceededError(BanlibError):
    """An exhaustive analysis was asked for a network above its size cap."""

    def __init__(self, n: int, cap: int, what: str = "analysis"):
        super().__init__(
            f"network has n={n} automata but {what} is capped at n<={cap}"
            " (override with --max-n)"
        )
        self.n = n
        self.cap = cap
