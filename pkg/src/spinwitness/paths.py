"""Brute-force enumeration of the constrained lattice paths.

A path starts at height 0 and takes N steps, each drawn from
:func:`spinwitness.spins.allowed_steps` at the current height. Heights are
twice-spins. The enumerator is a plain depth-first search with no memoization
so it shares nothing with the recursion in :mod:`spinwitness.multiplicity`.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from spinwitness.errors import CapExceededError, InvalidArgumentError, LimitExceededError
from spinwitness.spins import allowed_steps, tp_coeff

DEFAULT_NODE_BUDGET = 10**8


@dataclass(frozen=True)
class LatticePath:
    s: int
    heights: tuple[int, ...]  # twice-valued y_0 .. y_N

    def __post_init__(self):
        h = self.heights
        if not h or h[0] != 0:
            raise InvalidArgumentError("path must start at height 0")
        for y0, y1 in zip(h, h[1:]):
            if y1 - y0 not in allowed_steps(self.s, y0):
                raise InvalidArgumentError(f"illegal step {y0} -> {y1} for 2s = {self.s}")

    @property
    def N(self) -> int:
        return len(self.heights) - 1

    @property
    def points(self) -> list[tuple[int, int]]:
        """``(x, 2y)`` pairs."""
        return list(enumerate(self.heights))

    def coupling_weight(self) -> int:
        """Product of tensor-product coefficients along the path (1 for any legal path)."""
        w = 1
        for y0, y1 in zip(self.heights, self.heights[1:]):
            w *= tp_coeff(y0, self.s, y1)
        return w


def _validate(s: int, N: int) -> None:
    if s < 0 or N < 0:
        raise InvalidArgumentError("need s >= 0 and N >= 0")


def _walk(s: int, N: int, j: int | None, budget: int):
    """Yield step-height tuples in descending-step order; prune paths that cannot return to j."""
    stack = [(0, (0,))]
    visited = 0
    while stack:
        y, hs = stack.pop()
        visited += 1
        if visited > budget:
            raise CapExceededError(f"path enumeration exceeded node budget {budget}")
        left = N - (len(hs) - 1)
        if left == 0:
            if j is None or y == j:
                yield hs
            continue
        # push in reverse so the largest step is explored first
        for d in reversed(list(allowed_steps(s, y))):
            y1 = y + d
            if j is not None and y1 - (left - 1) * s > j:
                continue
            if j is not None and y1 + (left - 1) * s < j:
                continue
            stack.append((y1, hs + (y1,)))


def count_paths(s: int, N: int, j: int, budget: int = DEFAULT_NODE_BUDGET) -> int:
    _validate(s, N)
    if j < 0:
        return 0
    return sum(1 for _ in _walk(s, N, j, budget))


def endpoint_counts(s: int, N: int, budget: int = DEFAULT_NODE_BUDGET) -> dict[int, int]:
    """Number of paths ending at each height, from one full enumeration."""
    _validate(s, N)
    return dict(Counter(hs[-1] for hs in _walk(s, N, None, budget)))


def list_paths(s: int, N: int, j: int, limit: int, budget: int = DEFAULT_NODE_BUDGET) -> list[LatticePath]:
    _validate(s, N)
    out = []
    for hs in _walk(s, N, j, budget):
        if len(out) == limit:
            raise LimitExceededError(f"more than {limit} paths end at 2j = {j}")
        out.append(LatticePath(s, hs))
    return out


def format_path(path: LatticePath) -> str:
    """``x,twice_y`` pairs joined by semicolons."""
    return ";".join(f"{x},{y}" for x, y in path.points)
