"""Exact (half-)integer spins, SO(3) coupling rules and lattice steps.

Every spin is carried as the integer ``2j``. Functions here accept plain ints
or :class:`TwiceSpin` interchangeably; both mean "twice the spin".
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from spinwitness.errors import InvalidArgumentError

_TOKEN = re.compile(r"^\s*(\d+)\s*(?:/\s*2)?\s*$")


class TwiceSpin(int):
    """A spin ``j`` stored as the non-negative integer ``2j``.

    >>> TwiceSpin.parse("3/2")
    TwiceSpin(3)
    >>> TwiceSpin(3).j
    Fraction(3, 2)
    """

    def __new__(cls, twice: int) -> TwiceSpin:
        if isinstance(twice, bool) or int(twice) != twice or twice < 0:
            raise InvalidArgumentError(f"twice-spin must be a non-negative integer, got {twice!r}")
        return super().__new__(cls, int(twice))

    @classmethod
    def parse(cls, token: str) -> TwiceSpin:
        """Parse ``"<int>"`` or ``"<odd-int>/2"``. Decimal forms such as ``1.5`` are rejected."""
        m = _TOKEN.match(str(token))
        if m is None:
            raise InvalidArgumentError(f"bad spin token {token!r}; use an integer or <odd>/2")
        n = int(m.group(1))
        if "/" in token:
            if n % 2 == 0:
                raise InvalidArgumentError(f"bad spin token {token!r}; write even halves as integers")
            return cls(n)
        return cls(2 * n)

    @classmethod
    def from_value(cls, j: int | Fraction) -> TwiceSpin:
        twice = Fraction(j) * 2
        if twice.denominator != 1:
            raise InvalidArgumentError(f"{j} is not a multiple of 1/2")
        return cls(twice.numerator)

    @property
    def j(self) -> Fraction:
        return Fraction(int(self), 2)

    @property
    def is_half_integer(self) -> bool:
        return int(self) % 2 == 1

    def __str__(self) -> str:
        t = int(self)
        return f"{t}/2" if t % 2 else str(t // 2)

    def __repr__(self) -> str:
        return f"TwiceSpin({int(self)})"


def spin_label(twice: int) -> str:
    return str(TwiceSpin(twice))


def tp_coeff(j1: int, j2: int, j3: int) -> int:
    """Multiplicity of ``[j3]`` in ``[j1] (x) [j2]``; 0 or 1 for SO(3)."""
    if min(j1, j2, j3) < 0:
        return 0
    if (j1 + j2 + j3) % 2:
        return 0
    return int(abs(j1 - j2) <= j3 <= j1 + j2)


def irrep_dim(j: int) -> int:
    """Dimension ``2j+1`` of the spin-j irrep (argument is ``2j``)."""
    return int(j) + 1


@dataclass(frozen=True)
class StepSet:
    """Contiguous set of height increments ``hi, hi-1, ..., lo`` (all twice-valued, stride 2)."""

    lo: int
    hi: int

    def __iter__(self):
        return iter(range(self.hi, self.lo - 1, -2))

    def __len__(self) -> int:
        return (self.hi - self.lo) // 2 + 1

    def __contains__(self, delta: object) -> bool:
        return isinstance(delta, int) and self.lo <= delta <= self.hi and (delta - self.lo) % 2 == 0


def allowed_steps(s: int, y: int) -> StepSet:
    """Increments allowed from height ``y`` when coupling one more spin ``s``.

    The set is ``{s, s-1, ..., max(-s, s-2y)}``, i.e. every ``d`` with
    ``tp_coeff(y, s, y+d) == 1``.
    """
    if s < 0 or y < 0:
        raise InvalidArgumentError("spins must be non-negative")
    return StepSet(lo=max(-s, s - 2 * y), hi=s)
