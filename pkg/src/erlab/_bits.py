"""Helpers for vertex sets stored as Python int bitmasks."""

from __future__ import annotations

import os
from typing import Iterable, Iterator

from .errors import BudgetError

DEFAULT_BUDGET = 10**7


def bit(v: int) -> int:
    return 1 << v


def from_iter(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def members(mask: int) -> list[int]:
    return list(iter_bits(mask))


def popcount(mask: int) -> int:
    return mask.bit_count()


def lowest(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


def full(n: int) -> int:
    return (1 << n) - 1


def default_budget() -> int:
    """Search budget, overridable through the ERLAB_BUDGET environment variable."""
    raw = os.environ.get("ERLAB_BUDGET")
    if raw:
        try:
            value = int(raw)
        except ValueError:
            value = 0
        if value > 0:
            return value
    return DEFAULT_BUDGET


class Counter:
    """Node counter that raises BudgetError once ``limit`` is passed."""

    __slots__ = ("limit", "count", "what")

    def __init__(self, limit: int | None, what: str = "search"):
        self.limit = default_budget() if limit is None else limit
        self.count = 0
        self.what = what

    def tick(self, amount: int = 1) -> None:
        self.count += amount
        if self.count > self.limit:
            raise BudgetError(f"{self.what} exceeded budget of {self.limit} nodes")
