"""Exception types and the cooperative deadline used by long enumerations."""

from __future__ import annotations

import time
from contextlib import contextmanager


class PerpCalcError(Exception):
    """Base class for all library errors."""


class SpecSyntaxError(PerpCalcError):
    def __init__(self, message: str, text: str = "", pos: int | None = None):
        self.text = text
        self.pos = pos
        if pos is not None:
            message = f"{message} at position {pos}"
        super().__init__(message)


class SpecSemanticError(PerpCalcError):
    """A syntactically valid spec describing an invalid ring or module."""


class GuardExceeded(PerpCalcError):
    """A size guard or the deadline was hit."""


class PreconditionError(PerpCalcError):
    pass


class ModuleMismatch(PerpCalcError):
    pass


_deadline: float | None = None


@contextmanager
def deadline(seconds: float | None):
    """Install a process-wide deadline polled by :func:`check_deadline`."""
    global _deadline
    previous = _deadline
    _deadline = None if seconds is None else time.monotonic() + seconds
    try:
        yield
    finally:
        _deadline = previous


def check_deadline() -> None:
    if _deadline is not None and time.monotonic() > _deadline:
        raise GuardExceeded("timeout: deadline reached")
