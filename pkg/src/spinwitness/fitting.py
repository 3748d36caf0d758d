"""Least-squares fit of f_s(inf) to ``1 / (a s^b + c)``.

Coarse grid plus seeded random starts, then Nelder-Mead refinement of the
most promising starts. The final pick is ordered by (ssr, a, b, c) so the
result does not depend on the order of the input points.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.optimize import minimize

from spinwitness.errors import ConvergenceError, InvalidArgumentError

A_RANGE = (0.1, 10.0)
B_RANGE = (0.1, 4.0)
C_RANGE = (0.1, 10.0)


@dataclass(frozen=True)
class FitParams:
    a: float
    b: float
    c: float
    ssr: float = float("nan")

    def __post_init__(self):
        if not self.a > 0:
            raise InvalidArgumentError(f"a must be > 0, got {self.a}")
        if not self.c > 0:
            raise InvalidArgumentError(f"c must be > 0, got {self.c}")


@dataclass(frozen=True)
class FitResult:
    params: FitParams
    n_points: int
    seed: int
    weighted: bool

    def report(self) -> dict:
        p = self.params
        return {"a": p.a, "b": p.b, "c": p.c, "ssr": p.ssr, "n_points": self.n_points,
                "seed": self.seed, "weighted": self.weighted}


def model_eval(p: FitParams, s):
    s = np.asarray(s, dtype=float)
    if np.any(s <= 0):
        raise InvalidArgumentError("model is defined for s > 0 only")
    out = 1.0 / (p.a * s**p.b + p.c)
    return float(out) if out.ndim == 0 else out


def _ssr(theta, s, f, w) -> float:
    a, b, c = theta
    if a <= 0 or c <= 0:
        return np.inf
    r = f - 1.0 / (a * s**b + c)
    return float(np.sum(w * r * r))


def residual_sum(p: FitParams, points) -> float:
    s, f, w = _unpack(points)
    return _ssr((p.a, p.b, p.c), s, f, w)


def _unpack(points):
    arr = [tuple(pt) for pt in points]
    s = np.array([float(pt[0]) for pt in arr])
    f = np.array([float(pt[1]) for pt in arr])
    w = np.array([float(pt[2]) if len(pt) > 2 else 1.0 for pt in arr])
    return s, f, w


def _starts(seed: int, grid: int, n_random: int) -> np.ndarray:
    axes = [np.linspace(*r, grid) for r in (A_RANGE, B_RANGE, C_RANGE)]
    g = np.array(list(itertools.product(*axes)))
    rng = np.random.default_rng(seed)
    lo = np.array([A_RANGE[0], B_RANGE[0], C_RANGE[0]])
    hi = np.array([A_RANGE[1], B_RANGE[1], C_RANGE[1]])
    return np.vstack([g, lo + (hi - lo) * rng.random((n_random, 3))])


def fit(
    points: Sequence[Sequence[float]],
    seed: int = 0,
    *,
    grid: int = 6,
    n_random: int = 64,
    n_refine: int = 8,
    xatol: float = 1e-9,
) -> FitResult:
    """Fit ``(s, f[, weight])`` points; weights default to 1."""
    s, f, w = _unpack(points)
    if len(s) < 4:
        raise InvalidArgumentError("need at least 4 points for a 3-parameter fit")
    if np.any(s <= 0):
        raise InvalidArgumentError("spins must be positive")
    order = np.lexsort((w, f, s))
    s, f, w = s[order], f[order], w[order]

    starts = _starts(seed, grid, n_random)
    scores = np.array([_ssr(t, s, f, w) for t in starts])
    best_grid = float(scores.min())
    picks = starts[np.argsort(scores, kind="stable")[:n_refine]]

    opts = {"xatol": xatol, "fatol": 1e-22, "maxiter": 20000, "maxfev": 40000}
    candidates = []
    for x0 in picks:
        res = minimize(_ssr, x0, args=(s, f, w), method="Nelder-Mead", options=opts)
        candidates.append((float(res.fun), *map(float, res.x)))
    candidates.sort()
    # a restart from the best point shakes off a collapsed simplex
    res = minimize(_ssr, candidates[0][1:], args=(s, f, w), method="Nelder-Mead", options=opts)
    candidates.append((float(res.fun), *map(float, res.x)))
    candidates.sort()
    ssr, a, b, c = candidates[0]
    if not np.isfinite(ssr) or not ssr < 10 * best_grid:
        raise ConvergenceError(f"refinement did not improve on the grid (best grid ssr {best_grid:g})")
    params = FitParams(a, b, c, _ssr((a, b, c), s, f, w))
    return FitResult(params, len(s), seed, bool(np.any(w != 1.0)))
