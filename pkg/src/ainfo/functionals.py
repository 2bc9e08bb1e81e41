"""Objective functionals whose optima give the alpha-MI measures.

These evaluate an objective at an arbitrary point, not only at the AO
iterates, so they serve as the reference when checking solver traces.

Array conventions: ``p`` is an input distribution of shape ``(X,)``, ``W``
the channel ``(X, Y)``, ``qt`` a surrogate channel ``(X, Y)`` with rows
summing to one, ``q`` a surrogate joint ``(X, Y)`` summing to one, and ``r``
a reverse channel stored ``(X, Y)`` with *columns* summing to one, i.e.
``r[x, y] = r(x|y)``.
"""

from __future__ import annotations

import numpy as np
from scipy.special import logsumexp, rel_entr

from ainfo.core import AlphaLike, AlphaParam, _log, _weighted_log_terms, renyi_divergence

__all__ = [
    "ac_objective",
    "c_functional",
    "c_tilde_functional",
    "lp_functional",
    "lp_objective",
    "lp_tilde_functional",
    "s1_functional",
    "s2_functional",
    "s3_tilde_functional",
    "sibson_objective",
    "tilt_reverse_channel",
]


def _a(alpha: AlphaLike) -> AlphaParam:
    return alpha if isinstance(alpha, AlphaParam) else AlphaParam(float(alpha))


def _kl(a, b) -> float:
    return float(rel_entr(a, b).sum())


def _cross_log(weight, logv) -> float:
    """sum weight * logv over weight > 0 (``-inf`` if any such logv is -inf)."""
    with np.errstate(invalid="ignore"):
        return float(np.where(weight > 0, weight * logv, 0.0).sum())


def s1_functional(alpha: AlphaLike, p, W, r) -> float:
    """a/(a-1) log sum_{x,y} p(x)^(1/a) W(y|x) r(x|y)^(1-1/a)."""
    a = _a(alpha)
    p, W, r = map(np.asarray, (p, W, r))
    weight = p[:, None] * W
    logt = _weighted_log_terms(weight, _log(p)[:, None] / a.alpha + _log(W), a.beta, _log(r))
    return float(a.ratio * logsumexp(logt))


def tilt_reverse_channel(alpha: AlphaLike, r) -> np.ndarray:
    """Tilt each r(.|y) to r(x|y)^a / sum_x r(x|y)^a."""
    a = _a(alpha)
    r = np.asarray(r)
    lr = np.where(r > 0, a.alpha * _log(r), -np.inf)
    return np.exp(lr - logsumexp(lr, axis=0, keepdims=True))


def s2_functional(alpha: AlphaLike, p, W, r) -> float:
    """S1 functional evaluated at the tilted reverse channel."""
    return s1_functional(alpha, p, W, tilt_reverse_channel(alpha, r))


def s3_tilde_functional(alpha: AlphaLike, p, W, q, r) -> float:
    a = _a(alpha)
    p, W, q, r = map(np.asarray, (p, W, q, r))
    qx = q.sum(axis=1)
    return (
        a.neg_ratio * _kl(q, qx[:, None] * W)
        + _cross_log(q, _log(r) - _log(qx)[:, None])
        + _kl(qx, p) / (1.0 - a.alpha)
    )


def c_functional(alpha: AlphaLike, p, W, qt, qy) -> float:
    """Minimized over (qt, qy) for alpha < 1."""
    a = _a(alpha)
    p, W, qt, qy = map(np.asarray, (p, W, qt, qy))
    joint = p[:, None] * qt
    return a.neg_ratio * _kl(joint, p[:, None] * W) + _kl(joint, p[:, None] * qy[None, :])


def c_tilde_functional(alpha: AlphaLike, p, W, qt, r) -> float:
    """Maximized over (qt, r) for alpha > 1, and over p as well for capacity."""
    a = _a(alpha)
    p, W, qt, r = map(np.asarray, (p, W, qt, r))
    joint = p[:, None] * qt
    return a.neg_ratio * _kl(joint, p[:, None] * W) + _cross_log(joint, _log(r) - _log(p)[:, None])


def lp_functional(alpha: AlphaLike, p, W, q, qy) -> float:
    """Minimized over (q, qy) for alpha < 1."""
    a = _a(alpha)
    p, W, q, qy = map(np.asarray, (p, W, q, qy))
    qx = q.sum(axis=1)
    return (
        a.neg_ratio * _kl(q, qx[:, None] * W)
        + _kl(q, qx[:, None] * qy[None, :])
        + a.neg_ratio * _kl(qx, p)
    )


def lp_tilde_functional(alpha: AlphaLike, p, W, q, r) -> float:
    """Maximized over (q, r) for alpha > 1, and over p as well for capacity."""
    a = _a(alpha)
    p, W, q, r = map(np.asarray, (p, W, q, r))
    qx = q.sum(axis=1)
    return (
        a.neg_ratio * _kl(q, qx[:, None] * W)
        + _cross_log(q, _log(r) - _log(qx)[:, None])
        + a.neg_ratio * _kl(qx, p)
    )


def sibson_objective(alpha: AlphaLike, p, W, qy) -> float:
    """D_a(p W || p qy), minimized over qy by the Sibson MI."""
    p, W, qy = map(np.asarray, (p, W, qy))
    return renyi_divergence(alpha, p[:, None] * W, p[:, None] * qy[None, :])


def ac_objective(alpha: AlphaLike, p, W, qy) -> float:
    """E_p[D_a(W(.|X) || qy)], minimized over qy by the Augustin-Csiszar MI."""
    p, W, qy = map(np.asarray, (p, W, qy))
    total = 0.0
    for px, row in zip(p, W):
        if px > 0:
            total += px * renyi_divergence(alpha, row, qy)
    return float(total)


def lp_objective(alpha: AlphaLike, p, W, qx, qy) -> float:
    """D_a(p W || qx qy), jointly minimized by the Lapidoth-Pfister MI."""
    p, W, qx, qy = map(np.asarray, (p, W, qx, qy))
    return renyi_divergence(alpha, p[:, None] * W, qx[:, None] * qy[None, :])
