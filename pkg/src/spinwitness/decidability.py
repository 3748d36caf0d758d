"""Separable bound, decidable fraction f_s(N) and the jump-bracket estimate of f_s(inf).

A witness level ``j`` is decidable when ``j(j+1) < N s``. With ``t = 2j`` and
``sigma = 2s`` this is the integer test ``t (t + 2) < 2 N sigma``.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

import numpy as np

from spinwitness.errors import InvalidArgumentError, NoJumpError
from spinwitness.multiplicity import Backend, MultiplicityRow, degeneracy_rows_stream, mult_row

JUMP_EPS = 1e-12


def separable_bound(s: int, N: int) -> Fraction:
    """Lower bound ``N s`` on ``<W>`` over separable states."""
    if N < 0:
        raise InvalidArgumentError("N must be >= 0")
    return Fraction(N * s, 2)


def is_decidable(s: int, N: int, j: int) -> bool:
    return j * (j + 2) < 2 * N * s


def min_reachable(s: int, N: int) -> int:
    """Smallest twice-spin present in ``[s]^{(x)N}``; every level from there up to ``N s`` occurs."""
    lo = 0
    for n in range(N):
        top = n * s
        lo = (top - s) % 2 if lo <= s <= top else min(abs(lo - s), abs(top - s))
    return lo


def decidable_j_set(s: int, N: int) -> set[int]:
    """Reachable twice-spins ``j`` with ``j(j+1) < N s``."""
    if N < 0:
        raise InvalidArgumentError("N must be >= 0")
    return {j for j in range(min_reachable(s, N), N * s + 1, 2) if is_decidable(s, N, j)}


def _decidable_count(row: MultiplicityRow) -> int:
    # decidable levels are a prefix of the stored range
    p, bound = row.parity, 2 * row.N * row.s
    n = 0
    while p + 2 * n <= row.max_twice_j and (p + 2 * n) * (p + 2 * n + 2) < bound:
        n += 1
    return n


def fraction_of_row(row: MultiplicityRow, js: Iterable[int] | None = None) -> float:
    """Share of the Hilbert space spanned by levels in ``js`` (default: the decidable ones)."""
    if row.backend is Backend.EXACT:
        total = (row.s + 1) ** row.N
        if js is None:
            n = _decidable_count(row)
            num = sum((row.parity + 2 * i + 1) * row.values[i] for i in range(n))
        else:
            num = sum((j + 1) * row[j] for j in set(js))
        return float(Fraction(num, total))
    if js is None:
        n = _decidable_count(row)
        t = row.parity + 2 * np.arange(n)
        return float(np.dot(t + 1, row.values[:n]))
    return float(sum((j + 1) * row[j] for j in set(js)))


def fraction(s: int, N: int, backend: Backend | str = Backend.NORMALIZED, cap: int | None = None) -> float:
    if N < 1:
        raise InvalidArgumentError("fraction needs N >= 1")
    return fraction_of_row(mult_row(s, N, backend, cap))


@dataclass
class FractionSeries:
    s: int
    N: np.ndarray
    f: np.ndarray
    backend: Backend = Backend.NORMALIZED

    @property
    def parity_split(self) -> bool:
        return self.s % 2 == 1

    def at(self, N: int) -> float:
        idx = int(N - self.N[0])
        if not 0 <= idx < len(self.N) or self.N[idx] != N:
            raise KeyError(N)
        return float(self.f[idx])

    def subseries(self, parity: int) -> FractionSeries:
        keep = self.N % 2 == parity
        return FractionSeries(self.s, self.N[keep], self.f[keep], self.backend)

    def classes(self) -> dict[str, FractionSeries]:
        """Parity classes used for jump detection and CSV output."""
        if self.parity_split:
            return {"even": self.subseries(0), "odd": self.subseries(1)}
        return {"all": self}

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["N", "f"])
        for n, v in zip(self.N, self.f):
            w.writerow([int(n), format(float(v), ".12g")])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, s: int, text: str) -> FractionSeries:
        rows = list(csv.DictReader(io.StringIO(text)))
        return cls(s, np.array([int(r["N"]) for r in rows]), np.array([float(r["f"]) for r in rows]))


def fraction_series(
    s: int, N_min: int, N_max: int, backend: Backend | str = Backend.NORMALIZED, cap: int | None = None
) -> FractionSeries:
    """f_s(N) for N_min <= N <= N_max from a single streaming pass."""
    if not 1 <= N_min <= N_max:
        raise InvalidArgumentError(f"need 1 <= N_min <= N_max, got {N_min}, {N_max}")
    backend = Backend(backend)
    Ns, fs = [], []
    for row in degeneracy_rows_stream(s, N_max, backend, cap):
        if row.N >= N_min:
            Ns.append(row.N)
            fs.append(fraction_of_row(row))
    return FractionSeries(s, np.array(Ns), np.array(fs), backend)


@dataclass(frozen=True)
class AsymptoteEstimate:
    s: int
    N_lo: int
    N_hi: int
    f_lo: float
    f_hi: float
    center: float = field(init=False)
    half_width: float = field(init=False)

    def __post_init__(self):
        if not self.f_lo < self.f_hi:
            raise InvalidArgumentError("a jump bracket needs f_lo < f_hi")
        object.__setattr__(self, "center", (self.f_hi + self.f_lo) / 2)
        object.__setattr__(self, "half_width", (self.f_hi - self.f_lo) / 2)


def jump_indices(f: np.ndarray) -> np.ndarray:
    """Positions i where f[i+1] exceeds f[i] by more than JUMP_EPS."""
    return np.flatnonzero(np.diff(f) > JUMP_EPS)


def last_jump(series: FractionSeries) -> AsymptoteEstimate:
    """Rightmost upward jump between consecutive samples of the parity class used for the estimate.

    Half-integer spins use the even-N samples, integer spins use every N.
    """
    sub = series.subseries(0) if series.parity_split else series
    idx = jump_indices(sub.f)
    if len(idx) == 0:
        raise NoJumpError(f"f is non-increasing on N in [{series.N[0]}, {series.N[-1]}]")
    i = int(idx[-1])
    return AsymptoteEstimate(series.s, int(sub.N[i]), int(sub.N[i + 1]), float(sub.f[i]), float(sub.f[i + 1]))


def estimate_f_infinity(s: int, N_max: int, backend: Backend | str = Backend.NORMALIZED) -> AsymptoteEstimate:
    return last_jump(fraction_series(s, 1, N_max, backend))
