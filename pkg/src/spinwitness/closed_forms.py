"""Closed-form counts used as independent checks on the recursion.

All arguments named ``j`` or ``s`` are twice-spins.
"""

from __future__ import annotations

from functools import lru_cache
from math import comb

from spinwitness.errors import InvalidArgumentError


def catalan_triangle(n: int, k: int) -> int:
    """``(n+k)! (n-k+1) / (k! (n+1)!)``: non-negative +-1 paths; ``C(n, n)`` is the n-th Catalan number."""
    if n < 0 or k < 0 or k > n:
        raise InvalidArgumentError(f"need 0 <= k <= n, got n={n}, k={k}")
    q, r = divmod(comb(n + k, k) * (n - k + 1), n + 1)
    assert r == 0
    return q


def d_half_closed(N: int, j: int) -> int:
    """Degeneracy of ``W = j(j+1)`` for N spin-1/2 particles, N even."""
    if N < 0 or N % 2:
        raise InvalidArgumentError(f"closed form holds for even N >= 0 only, got N={N}")
    if j % 2 or j < 0 or j > N:
        return 0
    jj = j // 2
    q, r = divmod((j + 1) ** 2 * comb(N, N // 2 + jj), N // 2 + jj + 1)
    assert r == 0
    return q


def riordan_d1(N: int) -> int:
    """Singlet count for N spin-1 particles (Riordan numbers).

    Valid for N >= 2. The sum is empty for N <= 1 and returns 0, which is
    wrong at N = 0 (one empty coupling); use the recursion there.
    """
    if N < 0:
        raise InvalidArgumentError("N must be >= 0")
    total = sum(comb(N + 1, k) * comb(N - k - 1, k - 1) for k in range(1, N))
    q, r = divmod(total, N + 1)
    assert r == 0
    return q


@lru_cache(maxsize=256)
def magnetization_counts(s: int, N: int) -> tuple[int, ...]:
    """Coefficients of ``(1 + x + ... + x^{2s})^N``.

    Entry ``n`` counts product basis states with total ``2M = 2n - N*2s``.
    """
    if N < 0:
        raise InvalidArgumentError("N must be >= 0")
    if N == 0:
        return (1,)
    prev = magnetization_counts(s, N - 1)
    out = [0] * (len(prev) + s)
    for n, c in enumerate(prev):
        if c:
            for k in range(s + 1):
                out[n + k] += c
    return tuple(out)


def _count_with_magnetization(s: int, N: int, twice_m: int) -> int:
    counts = magnetization_counts(s, N)
    shifted = twice_m + N * s
    if shifted < 0 or shifted % 2 or shifted // 2 >= len(counts):
        return 0
    return counts[shifted // 2]


def mult_via_magnetization(s: int, N: int, j: int) -> int:
    """``m_s(N, j) = K(j) - K(j+1)`` with ``K(M)`` the number of states at total magnetization M."""
    if j < 0:
        return 0
    return _count_with_magnetization(s, N, j) - _count_with_magnetization(s, N, j + 2)
