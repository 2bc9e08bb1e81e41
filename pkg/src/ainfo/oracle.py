"""Brute-force reference values for the alpha-MI measures.

Nothing here calls the solver code.  The objectives are re-evaluated in
the direct (non-log) domain with plain numpy powers, and minima are found
by exhaustive search on a barycentric lattice that is repeatedly recentred
on the incumbent and shrunk.  That makes the oracle slow and only good to
about 1e-5, which is the point: it fails differently from the solvers.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable

import numpy as np

__all__ = [
    "DimensionTooLarge",
    "GridSpec",
    "StationarityReport",
    "direct_ac_objective",
    "direct_lp_objective",
    "direct_sibson_objective",
    "exhaustive_joint_min",
    "grid_ac_mi",
    "grid_min_over_simplex",
    "grid_sibson_mi",
    "simplex_lattice",
    "verify_stationarity",
]

MAX_SIMPLEX_DIM = 4
MAX_JOINT_DIM = 3
_BIG = 1e300


class DimensionTooLarge(ValueError):
    """The grid would be too large to search exhaustively."""


@dataclass(frozen=True)
class GridSpec:
    """Lattice search settings.

    The first pass uses a lattice with ``resolution`` steps per simplex
    edge.  Each of the ``refinement_levels`` further passes lays the same
    lattice, scaled by another factor of ``shrink_factor``, around the best
    point found so far.
    """

    resolution: int = 60
    refinement_levels: int = 3
    shrink_factor: float = 0.15

    def __post_init__(self):
        if int(self.resolution) < 10:
            raise ValueError(f"resolution must be >= 10, got {self.resolution}")
        if int(self.refinement_levels) < 1:
            raise ValueError(f"refinement_levels must be >= 1, got {self.refinement_levels}")
        if not 0 < self.shrink_factor < 1:
            raise ValueError(f"shrink_factor must lie in (0, 1), got {self.shrink_factor}")


def simplex_lattice(n: int, resolution: int) -> np.ndarray:
    """All points of the n-simplex with coordinates in multiples of 1/resolution."""
    pts = []
    for bars in itertools.combinations(range(resolution + n - 1), n - 1):
        edges = (-1,) + bars + (resolution + n - 1,)
        pts.append([edges[i + 1] - edges[i] - 1 for i in range(n)])
    return np.array(pts, dtype=np.float64) / resolution


def _zoomed(lattice: np.ndarray, center: np.ndarray, scale: float) -> np.ndarray:
    n = lattice.shape[1]
    pts = center + scale * (lattice - 1.0 / n)
    pts = pts[pts.min(axis=1) >= -1e-12]
    pts = np.clip(pts, 0.0, None)
    pts /= pts.sum(axis=1, keepdims=True)
    return np.vstack([center[None, :], pts])


def _evaluate(objective, pts: np.ndarray, vectorized: bool) -> np.ndarray:
    if vectorized:
        vals = np.asarray(objective(pts), dtype=np.float64)
    else:
        vals = np.array([objective(p) for p in pts], dtype=np.float64)
    return np.where(np.isnan(vals), np.inf, vals)


def grid_min_over_simplex(
    objective: Callable,
    n: int,
    spec: GridSpec | None = None,
    vectorized: bool = False,
    return_levels: bool = False,
):
    """Minimize ``objective`` over the probability simplex in ``n`` dimensions.

    With ``vectorized=True`` the objective receives an ``(m, n)`` array of
    points and returns ``m`` values; otherwise it is called point by point.
    Returns ``(point, value)``, plus the best value after each pass when
    ``return_levels`` is set.
    """
    spec = spec or GridSpec()
    if n > MAX_SIMPLEX_DIM:
        raise DimensionTooLarge(f"simplex grid limited to n <= {MAX_SIMPLEX_DIM}, got {n}")
    if n < 1:
        raise ValueError("n must be positive")
    lattice = simplex_lattice(n, spec.resolution)
    vals = _evaluate(objective, lattice, vectorized)
    k = int(np.argmin(vals))
    best, best_val = lattice[k], float(vals[k])
    levels = [best_val]
    scale = 1.0
    for _ in range(spec.refinement_levels):
        scale *= spec.shrink_factor
        pts = _zoomed(lattice, best, scale)
        vals = _evaluate(objective, pts, vectorized)
        vals[0] = best_val  # keep the incumbent bit-for-bit
        k = int(np.argmin(vals))
        best, best_val = pts[k], float(vals[k])
        levels.append(best_val)
    if return_levels:
        return best, best_val, levels
    return best, best_val


# ---------------------------------------------------------------------------
# direct-domain objectives (vectorized over the last argument)
# ---------------------------------------------------------------------------


def _pow(base: np.ndarray, expo: float) -> np.ndarray:
    with np.errstate(divide="ignore"):
        out = np.power(base, expo)
    return np.where(np.isinf(out), _BIG, out)


def _violations(q: np.ndarray, mass: np.ndarray) -> np.ndarray:
    """[m, k]: does point q[m] put zero weight where mass[k] is positive?"""
    return ((q == 0).astype(np.float64) @ (mass > 0).T.astype(np.float64)) > 0


def _check_alpha(alpha) -> float:
    a = float(alpha)
    if a <= 0 or a == 1.0:
        raise ValueError(f"oracle needs alpha in (0, 1) U (1, inf), got {a}")
    return a


def direct_sibson_objective(alpha, p, W, qy) -> np.ndarray:
    """D_a(p W || p qy) for each row of ``qy``."""
    a = _check_alpha(alpha)
    p, W, qy = np.asarray(p, float), np.asarray(W, float), np.atleast_2d(qy)
    m = p @ np.power(W, a)
    with np.errstate(divide="ignore", over="ignore"):
        v = np.log(_pow(qy, 1 - a) @ m) / (a - 1)
    if a > 1:
        v = np.where(_violations(qy, m[None, :])[:, 0], np.inf, v)
    return v


def direct_ac_objective(alpha, p, W, qy) -> np.ndarray:
    """sum_x p(x) D_a(W(.|x) || qy) for each row of ``qy``."""
    a = _check_alpha(alpha)
    p, W, qy = np.asarray(p, float), np.asarray(W, float), np.atleast_2d(qy)
    with np.errstate(divide="ignore", over="ignore"):
        logs = np.log(_pow(qy, 1 - a) @ np.power(W, a).T)  # (m, X)
    if a > 1:
        logs = np.where(_violations(qy, W), np.inf, logs)
    logs = np.where(p[None, :] > 0, logs, 0.0)
    return (logs @ p) / (a - 1)


def direct_lp_objective(alpha, P, qx, qy) -> np.ndarray:
    """D_a(P || qx qy) on the grid of all (qx row, qy row) pairs."""
    a = _check_alpha(alpha)
    P = np.asarray(P, float)
    qx, qy = np.atleast_2d(qx), np.atleast_2d(qy)
    with np.errstate(divide="ignore", over="ignore"):
        v = np.log(_pow(qx, 1 - a) @ np.power(P, a) @ _pow(qy, 1 - a).T) / (a - 1)
    if a > 1:
        bad_x = _violations(qx, (P.sum(axis=1) > 0)[None, :])[:, 0]
        bad_y = _violations(qy, (P.sum(axis=0) > 0)[None, :])[:, 0]
        v = np.where(bad_x[:, None] | bad_y[None, :], np.inf, v)
    return v


def grid_sibson_mi(alpha, p, W, spec: GridSpec | None = None) -> tuple[np.ndarray, float]:
    W = np.asarray(W, float)
    return grid_min_over_simplex(
        lambda q: direct_sibson_objective(alpha, p, W, q), W.shape[1], spec, vectorized=True
    )


def grid_ac_mi(alpha, p, W, spec: GridSpec | None = None) -> tuple[np.ndarray, float]:
    W = np.asarray(W, float)
    return grid_min_over_simplex(
        lambda q: direct_ac_objective(alpha, p, W, q), W.shape[1], spec, vectorized=True
    )


def exhaustive_joint_min(alpha, p_X, ch, spec: GridSpec | None = None, return_levels: bool = False):
    """Lapidoth-Pfister MI: min over (q_X, q_Y) of D_a(p_X W || q_X q_Y).

    Both simplices are searched on a common product grid, refined jointly.
    """
    spec = spec or GridSpec()
    p = np.asarray(p_X, dtype=np.float64)
    W = np.asarray(ch, dtype=np.float64)
    nx, ny = W.shape
    if nx > MAX_JOINT_DIM or ny > MAX_JOINT_DIM:
        raise DimensionTooLarge(f"joint grid limited to {MAX_JOINT_DIM}x{MAX_JOINT_DIM}, got {nx}x{ny}")
    P = p[:, None] * W
    lat_x = simplex_lattice(nx, spec.resolution)
    lat_y = simplex_lattice(ny, spec.resolution)

    def search(xs, ys):
        v = direct_lp_objective(alpha, P, xs, ys)
        v = np.where(np.isnan(v), np.inf, v)
        i, j = np.unravel_index(int(np.argmin(v)), v.shape)
        return xs[i], ys[j], float(v[i, j])

    bx, by, best = search(lat_x, lat_y)
    levels = [best]
    scale = 1.0
    for _ in range(spec.refinement_levels):
        scale *= spec.shrink_factor
        cx, cy, val = search(_zoomed(lat_x, bx, scale), _zoomed(lat_y, by, scale))
        if val < best:
            bx, by, best = cx, cy, val
        levels.append(best)
    if return_levels:
        return best, levels
    return best


# ---------------------------------------------------------------------------
# stationarity
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class StationarityReport:
    """Outcome of :func:`verify_stationarity`; truthy when the point passes.

    ``worst_direction`` is ``(block, i, j)``: moving mass from coordinate
    ``j`` to ``i`` of simplex ``block`` gave slope ``worst_slope``.
    """

    stationary: bool
    worst_slope: float
    worst_direction: tuple[int, int, int] | None
    directions_checked: int

    def __bool__(self):
        return self.stationary


def _blocks(point: np.ndarray, axis):
    """Index arrays for each simplex inside ``point``."""
    if point.ndim == 1 or axis is None:
        return [np.arange(point.size)]
    idx = np.arange(point.size).reshape(point.shape)
    return list(idx) if axis == 1 else list(idx.T)


def verify_stationarity(
    functional: Callable[[np.ndarray], float],
    point,
    perturbation: float = 1e-4,
    maximize: bool = True,
    axis: int | None = None,
    threshold: float = 1e-7,
) -> StationarityReport:
    """Finite-difference check that ``point`` optimizes ``functional``.

    ``point`` is a distribution, or a matrix whose rows (``axis=1``),
    columns (``axis=0``) or whole mass (``axis=None``) are distributions.
    For every pair of support coordinates (i, j) in the same simplex the
    slope of moving ``perturbation`` of mass from j to i must be at most
    ``threshold`` for a maximizer and at least ``-threshold`` for a
    minimizer.
    """
    if not 1e-6 <= perturbation <= 1e-3:
        raise ValueError(f"perturbation must lie in [1e-6, 1e-3], got {perturbation}")
    x0 = np.array(point, dtype=np.float64)
    flat = x0.reshape(-1)
    f0 = float(functional(x0))
    sign = 1.0 if maximize else -1.0
    worst, where, count = -np.inf, None, 0
    for b, block in enumerate(_blocks(x0, axis)):
        support = [k for k in block if flat[k] > 0]
        for i in support:
            for j in support:
                if i == j or flat[j] < perturbation:
                    continue
                x = flat.copy()
                x[i] += perturbation
                x[j] -= perturbation
                slope = sign * (float(functional(x.reshape(x0.shape))) - f0) / perturbation
                count += 1
                if slope > worst:
                    worst = slope
                    where = (b, int(np.flatnonzero(block == i)[0]), int(np.flatnonzero(block == j)[0]))
    ok = worst <= threshold
    return StationarityReport(bool(ok), float(sign * worst) if count else 0.0, where, count)
