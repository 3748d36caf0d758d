"""Multiplicities of ``[j]`` in ``[s]^{(x)N}`` by row-by-row recursion.

A row at fixed N holds ``m_s(N, j)`` for every reachable ``j``. Only one parity
class of ``2j`` is reachable (``2j = N*2s mod 2``), so rows are stored densely
over that class: index ``i`` holds ``2j = parity + 2i`` for ``0 <= 2j <= N*2s``.

Two backends:

* ``exact``: Python ints, windowed sums from a running prefix sum.
* ``normalized``: float64 entries ``m / (2s+1)^N``; each row is rescaled by
  ``2s+1`` as it is produced so values stay in ``[0, 1]`` up to N = 10^4.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import accumulate
from typing import Iterator, Sequence

import numpy as np

from spinwitness.errors import CapExceededError, InvalidArgumentError

DEFAULT_EXACT_CAP = 2000


class Backend(str, enum.Enum):
    EXACT = "exact"
    NORMALIZED = "normalized"


class Provenance(str, enum.Enum):
    DP = "dp"
    CLOSED_FORM = "closed_form"
    PATH_ORACLE = "path_oracle"
    SPECTRUM_ORACLE = "spectrum_oracle"


@dataclass(frozen=True)
class MultiplicityRow:
    s: int
    N: int
    values: Sequence  # list[int] (exact) or np.ndarray (normalized)
    backend: Backend

    @property
    def parity(self) -> int:
        return (self.N * self.s) % 2

    @property
    def max_twice_j(self) -> int:
        return self.N * self.s

    def twice_js(self) -> range:
        return range(self.parity, self.max_twice_j + 1, 2)

    def __getitem__(self, j: int):
        zero = 0 if self.backend is Backend.EXACT else 0.0
        if j < 0 or j > self.max_twice_j or (j - self.parity) % 2:
            return zero
        return self.values[(j - self.parity) // 2]

    def items(self):
        return zip(self.twice_js(), self.values)

    def as_dict(self) -> dict[int, object]:
        """Non-zero entries keyed by ``2j``."""
        return {j: v for j, v in self.items() if v}

    def degeneracies(self):
        """``(2j+1) m`` for every stored ``j``, aligned with :meth:`twice_js`."""
        if self.backend is Backend.EXACT:
            return [(j + 1) * m for j, m in self.items()]
        return (np.arange(self.parity, self.max_twice_j + 1, 2) + 1) * self.values

    def total_dimension(self):
        d = self.degeneracies()
        return sum(d) if self.backend is Backend.EXACT else float(np.sum(d))


def _base_row(s: int, backend: Backend) -> MultiplicityRow:
    values = [1] if backend is Backend.EXACT else np.ones(1)
    return MultiplicityRow(s, 0, values, backend)


def _exact_step(prev: MultiplicityRow) -> MultiplicityRow:
    s, n_prev = prev.s, prev.N
    N = n_prev + 1
    p_prev, p = prev.parity, (N * s) % 2
    prefix = [0, *accumulate(prev.values)]
    top = n_prev * s
    values = []
    for j in range(p, N * s + 1, 2):
        lo = abs(j - s)
        hi = min(j + s, top)
        if lo > hi:
            values.append(0)
            continue
        values.append(prefix[(hi - p_prev) // 2 + 1] - prefix[(lo - p_prev) // 2])
    return MultiplicityRow(s, N, values, Backend.EXACT)


def _normalized_step(prev: MultiplicityRow) -> MultiplicityRow:
    # Scatter form of the same recursion: every old height k feeds k+d for each
    # allowed step d >= max(-s, s - 2k). Only non-negative terms are added, so
    # tiny tail entries keep full relative precision.
    s, N = prev.s, prev.N + 1
    p_prev, p = prev.parity, (N * s) % 2
    old = prev.values
    new = np.zeros((N * s - p) // 2 + 1)
    for d in range(-s, s + 1, 2):
        # smallest old index with 2k >= s - d
        need = (s - d) // 2
        i0 = max(0, -(-(need - p_prev) // 2))
        if i0 >= len(old):
            continue
        off = (p_prev + d - p) // 2
        new[i0 + off : len(old) + off] += old[i0:]
    new /= s + 1
    return MultiplicityRow(s, N, new, Backend.NORMALIZED)


def _check(s: int, N: int, backend: Backend, cap: int | None) -> Backend:
    backend = Backend(backend)
    if s < 0:
        raise InvalidArgumentError("spin must be non-negative")
    if N < 0:
        raise InvalidArgumentError(f"N must be >= 0, got {N}")
    if backend is Backend.EXACT:
        cap = DEFAULT_EXACT_CAP if cap is None else cap
        if N > cap:
            raise CapExceededError(f"exact backend capped at N <= {cap}, asked for N = {N}")
    return backend


def degeneracy_rows_stream(
    s: int, N_max: int, backend: Backend | str = Backend.EXACT, cap: int | None = None
) -> Iterator[MultiplicityRow]:
    """Yield rows N = 0..N_max in order, holding at most two rows at a time."""
    backend = _check(s, N_max, backend, cap)
    step = _exact_step if backend is Backend.EXACT else _normalized_step
    row = _base_row(s, backend)
    yield row
    for _ in range(N_max):
        row = step(row)
        yield row


def mult_row(
    s: int, N: int, backend: Backend | str = Backend.EXACT, cap: int | None = None
) -> MultiplicityRow:
    row = None
    for row in degeneracy_rows_stream(s, N, backend, cap):
        pass
    return row


def degeneracy(s: int, N: int, j: int, backend: Backend | str = Backend.EXACT, cap: int | None = None):
    """``(2j+1) m_s(N, j)``; zero outside the reachable parity class and range."""
    return (j + 1) * mult_row(s, N, backend, cap)[j]


@dataclass
class DegeneracyTable:
    """``d_s(N, j)`` entries keyed by ``(N, 2j)``, tagged with where they came from."""

    s: int
    provenance: Provenance = Provenance.DP
    entries: dict[tuple[int, int], object] = field(default_factory=dict)

    @classmethod
    def from_dp(cls, s: int, N_max: int, backend: Backend | str = Backend.EXACT) -> DegeneracyTable:
        table = cls(s, Provenance.DP)
        for row in degeneracy_rows_stream(s, N_max, backend):
            for j, d in zip(row.twice_js(), row.degeneracies()):
                if d:
                    table.entries[(row.N, j)] = d
        return table

    def row(self, N: int) -> dict[int, object]:
        return {j: d for (n, j), d in self.entries.items() if n == N}

    def __getitem__(self, key: tuple[int, int]):
        return self.entries.get(key, 0)


def exact_to_normalized(row: MultiplicityRow) -> list[Fraction]:
    """Exact row divided by ``(2s+1)^N`` as fractions; reference for the float backend."""
    total = (row.s + 1) ** row.N
    return [Fraction(m, total) for m in row.values]
