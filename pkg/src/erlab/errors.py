"""Exception hierarchy shared by every erlab module."""

from __future__ import annotations


class ErlabError(Exception):
    """Base class for all erlab errors."""


class DomainError(ErlabError, ValueError):
    """An argument lies outside the operation's domain."""


class SizeError(ErlabError, OverflowError):
    """A construction would exceed the supported vertex count."""


class BudgetError(ErlabError):
    """A search or enumeration would exceed its work budget."""


class PreconditionError(ErlabError):
    """An input violates a checked precondition.

    ``witness`` carries the offending structure (a clique, a cycle, ...)
    when one is available.
    """

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class ConstructionError(ErlabError):
    """A construction failed its own post-verification."""


class ParseError(ErlabError, ValueError):
    """Malformed graph6 / edge-list input."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at byte {offset})")
        self.offset = offset
