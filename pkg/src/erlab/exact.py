"""Exact comparisons between rationals and real powers ``coef * base**(p/q)``."""

from __future__ import annotations

import math
from fractions import Fraction
from functools import total_ordering

from .errors import DomainError


def as_rational(x) -> Fraction:
    """Fraction from int, Fraction, decimal/fraction string or float.

    Floats go through their shortest repr, so ``0.1`` means 1/10.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        if not math.isfinite(x):
            raise DomainError(f"non-finite parameter {x}")
        return Fraction(repr(x))
    try:
        return Fraction(x)
    except (TypeError, ValueError) as exc:
        raise DomainError(f"not a rational number: {x!r}") from exc


@total_ordering
class RealPower:
    __slots__ = ("base", "exponent", "coef")

    def __init__(self, base, exponent, coef=1):
        self.base = as_rational(base)
        self.exponent = as_rational(exponent)
        self.coef = as_rational(coef)
        if self.base <= 0:
            raise DomainError("base must be positive")
        if self.coef < 0:
            raise DomainError("coefficient must be non-negative")

    def _sign_minus(self, other) -> int:
        other = as_rational(other)
        if self.coef == 0:
            return (0 > other) - (0 < other)
        if other <= 0:
            return 1
        p, q = self.exponent.numerator, self.exponent.denominator
        lhs = self.coef**q * self.base**p
        rhs = other**q
        return (lhs > rhs) - (lhs < rhs)

    def __eq__(self, other):
        if isinstance(other, RealPower):
            return NotImplemented
        return self._sign_minus(other) == 0

    def __lt__(self, other):
        return self._sign_minus(other) < 0

    def __gt__(self, other):
        return self._sign_minus(other) > 0

    def __hash__(self):
        return hash((self.base, self.exponent, self.coef))

    def __mul__(self, k):
        return RealPower(self.base, self.exponent, self.coef * as_rational(k))

    __rmul__ = __mul__

    def __float__(self) -> float:
        return float(self.coef) * math.exp(float(self.exponent) * math.log(self.base))

    def ceil(self) -> int:
        """Least integer m with m >= self."""
        m = math.ceil(float(self))
        while m - 1 >= 0 and self <= m - 1:
            m -= 1
        while self > m:
            m += 1
        return max(m, 0)

    def floor(self) -> int:
        m = math.floor(float(self))
        while self < m:
            m -= 1
        while self >= m + 1:
            m += 1
        return m

    def __repr__(self):
        c = "" if self.coef == 1 else f"{self.coef}*"
        return f"RealPower({c}{self.base}^{self.exponent})"
