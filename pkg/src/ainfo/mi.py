"""The four alpha-mutual-information measures.

Sibson and Arimoto MI have closed forms through Gallager's E0.  The
Augustin-Csiszar and Lapidoth-Pfister measures are computed by alternating
optimization; those solvers return an :class:`MIResult` carrying the value,
the objective trace and the converged auxiliary distributions.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.special import logsumexp

from ainfo import _backend
from ainfo.ao import AOConfig, AOTrace, Init
from ainfo.core import (
    AlphaLike,
    Channel,
    Distribution,
    ValidationError,
    _check_dims,
    _log,
    arimoto_conditional_entropy,
    as_alpha,
    gallager_e0,
    renyi_entropy,
    shannon_mi,
    tilted_distribution,
)

__all__ = [
    "MIResult",
    "ac_mi",
    "arimoto_mi_closed",
    "arimoto_mi_entropy_difference",
    "lp_mi_def_ao",
    "lp_mi_vc_ao",
    "sibson_mi_closed",
    "sibson_minimizer_qy",
]

UNPROVEN_REGIME = "unproven-regime"
NON_CONVERGENCE = "non-convergence"


@dataclass(frozen=True)
class MIResult:
    """Value of an alpha-MI plus how it was obtained.

    ``optimizers`` maps names (``"q_y"``, ``"q_x"``, ``"q_tilde"``,
    ``"q_joint"``, ``"r"``) to arrays; reverse channels are stored ``[x, y]``
    with columns summing to one.
    """

    value: float
    trace: AOTrace | None = None
    optimizers: dict = field(default_factory=dict)
    iterations: int = 0
    converged: bool = True
    flags: tuple[str, ...] = ()


def sibson_mi_closed(alpha: AlphaLike, p_X: Distribution, ch: Channel) -> float:
    """Sibson MI as ``a/(1-a) * E0(1/a - 1, p_X)``."""
    a = as_alpha(alpha)
    if a is None:
        return shannon_mi(p_X, ch)
    return a.neg_ratio * gallager_e0(a.rho, p_X, ch)


def sibson_minimizer_qy(alpha: AlphaLike, p_X: Distribution, ch: Channel) -> Distribution:
    """Output distribution attaining the Sibson minimum,
    ``q(y) ~ (sum_x p(x) W(y|x)^a)^(1/a)``."""
    _check_dims(p_X, ch)
    a = as_alpha(alpha)
    if a is None:
        return Distribution(p_X.probs @ ch.rows)
    al = a.alpha
    terms = np.where(ch.rows > 0, _log(p_X.probs)[:, None] + al * _log(ch.rows), -np.inf)
    s = logsumexp(terms, axis=0) / al
    return Distribution(np.exp(s - logsumexp(s)))


def arimoto_mi_closed(alpha: AlphaLike, p_X: Distribution, ch: Channel) -> float:
    """Arimoto MI through E0 evaluated at the tilted input."""
    a = as_alpha(alpha)
    if a is None:
        return shannon_mi(p_X, ch)
    return a.neg_ratio * gallager_e0(a.rho, tilted_distribution(a, p_X), ch)


def arimoto_mi_entropy_difference(alpha: AlphaLike, p_X: Distribution, ch: Channel) -> float:
    """Arimoto MI as Renyi entropy minus Arimoto conditional entropy.

    Independent of :func:`arimoto_mi_closed`; the two must agree.
    """
    return renyi_entropy(alpha, p_X) - arimoto_conditional_entropy(alpha, p_X, ch)


# ---------------------------------------------------------------------------
# AO solvers
# ---------------------------------------------------------------------------


def _custom(cfg: AOConfig, shape, what: str) -> np.ndarray:
    arr = np.array(cfg.custom_init, dtype=np.float64)
    if arr.shape != tuple(shape):
        raise ValidationError(f"custom {what} must have shape {tuple(shape)}, got {arr.shape}")
    if np.any(arr < 0) or not np.all(np.isfinite(arr)):
        raise ValidationError(f"custom {what} must be non-negative and finite")
    if arr.sum() <= 0:
        raise ValidationError(f"custom {what} has zero total mass")
    return arr


def _init_surrogate_channel(cfg: AOConfig, ch: Channel) -> np.ndarray:
    init = cfg.initialization
    if init is Init.INPUT_TIMES_CHANNEL:
        return ch.rows.copy()
    if init is Init.CUSTOM:
        qt = _custom(cfg, ch.shape, "surrogate channel")
        s = qt.sum(axis=1, keepdims=True)
        if np.any(s <= 0):
            raise ValidationError("custom surrogate channel has an all-zero row")
        return qt / s
    return np.full(ch.shape, 1.0 / ch.y_size)


def _init_joint(cfg: AOConfig, p: np.ndarray, ch: Channel) -> np.ndarray:
    init = cfg.initialization
    if init is Init.INPUT_TIMES_CHANNEL:
        return p[:, None] * ch.rows
    if init is Init.CUSTOM:
        q = _custom(cfg, ch.shape, "surrogate joint")
        return q / q.sum()
    return np.full(ch.shape, 1.0 / (ch.x_size * ch.y_size))


def _shannon_result(p_X, ch) -> MIResult:
    return MIResult(value=shannon_mi(p_X, ch), iterations=0)


def _result(value, trace: AOTrace, cfg: AOConfig, optimizers, flags=()) -> MIResult:
    flags = tuple(flags)
    if not trace.converged:
        flags += (NON_CONVERGENCE,)
    return MIResult(
        value=float(value),
        trace=trace if cfg.record_trace else None,
        optimizers=optimizers,
        iterations=trace.iterations,
        converged=trace.converged,
        flags=flags,
    )


def ac_mi(alpha: AlphaLike, p_X: Distribution, ch: Channel, cfg: AOConfig | None = None) -> MIResult:
    """Augustin-Csiszar MI by alternating optimization.

    For alpha < 1 the surrogate channel and output distribution are
    alternately minimized (marginal step, then ``qt ~ W^a q_y^(1-a)``); for
    alpha > 1 the surrogate channel and a reverse channel are alternately
    maximized.  ``cfg.initialization`` picks the starting surrogate channel
    (uniform rows, or the channel itself with ``INPUT_TIMES_CHANNEL``).
    """
    cfg = cfg or AOConfig()
    _check_dims(p_X, ch)
    a = as_alpha(alpha)
    if a is None:
        return _shannon_result(p_X, ch)
    k = _backend.kernels
    lw = np.ascontiguousarray(_log(ch.rows))
    logp = np.ascontiguousarray(_log(p_X.probs))
    lq0 = np.ascontiguousarray(_log(_init_surrogate_channel(cfg, ch)))
    if a.alpha < 1:
        lqt, lqy, tr, st = k.ac_lt1(lw, a.alpha, logp, lq0, cfg.tolerance, cfg.max_iterations)
        trace = AOTrace.from_kernel(tr, st, -1)
        opt = {"q_tilde": np.exp(lqt), "q_y": np.exp(lqy)}
    else:
        _, lqt, lr, tr, st = k.c_ao(lw, a.alpha, logp, lq0, False, cfg.tolerance, cfg.max_iterations)
        trace = AOTrace.from_kernel(tr, st, +1)
        opt = {"q_tilde": np.exp(lqt), "r": np.exp(lr)}
    return _result(trace.final_value, trace, cfg, opt)


def _lp_flags(a) -> tuple[str, ...]:
    return (UNPROVEN_REGIME,) if a.alpha < 0.5 else ()


def lp_mi_def_ao(alpha: AlphaLike, p_X: Distribution, ch: Channel, cfg: AOConfig | None = None) -> MIResult:
    """Lapidoth-Pfister MI by alternating the two product-factor updates.

    Each cycle sets ``q_x ~ [sum_y P^a q_y^(1-a)]^(1/a)`` and then
    ``q_y ~ [sum_x P^a q_x^(1-a)]^(1/a)`` with ``P = p_X W``; the trace is
    ``D_a(P || q_x q_y)``.  Convergence is only guaranteed for alpha >= 1/2;
    below that the result carries the ``"unproven-regime"`` flag.
    """
    cfg = cfg or AOConfig()
    _check_dims(p_X, ch)
    a = as_alpha(alpha)
    if a is None:
        return _shannon_result(p_X, ch)
    P = p_X.probs[:, None] * ch.rows
    init = cfg.initialization
    if init is Init.INPUT_TIMES_CHANNEL:
        qy0 = P.sum(axis=0)
    elif init is Init.CUSTOM:
        qy0 = _custom(cfg, (ch.y_size,), "output distribution")
        qy0 = qy0 / qy0.sum()
    else:
        qy0 = np.full(ch.y_size, 1.0 / ch.y_size)
    lqx, lqy, tr, st = _backend.kernels.lp_def(
        np.ascontiguousarray(_log(P)), a.alpha, np.ascontiguousarray(_log(qy0)),
        cfg.tolerance, cfg.max_iterations,
    )
    trace = AOTrace.from_kernel(tr, st, -1)
    opt = {"q_x": np.exp(lqx), "q_y": np.exp(lqy)}
    return _result(trace.final_value, trace, cfg, opt, _lp_flags(a))


def lp_mi_vc_ao(alpha: AlphaLike, p_X: Distribution, ch: Channel, cfg: AOConfig | None = None) -> MIResult:
    """Lapidoth-Pfister MI through its surrogate-joint characterization.

    alpha < 1 minimizes over (surrogate joint, output distribution);
    alpha > 1 maximizes over (surrogate joint, reverse channel).
    """
    cfg = cfg or AOConfig()
    _check_dims(p_X, ch)
    a = as_alpha(alpha)
    if a is None:
        return _shannon_result(p_X, ch)
    k = _backend.kernels
    lw = np.ascontiguousarray(_log(ch.rows))
    logp = np.ascontiguousarray(_log(p_X.probs))
    lq0 = np.ascontiguousarray(_log(_init_joint(cfg, p_X.probs, ch)))
    if a.alpha < 1:
        lq, lqy, tr, st = k.lp_vc_lt1(lw, a.alpha, logp, lq0, cfg.tolerance, cfg.max_iterations)
        trace = AOTrace.from_kernel(tr, st, -1)
        opt = {"q_joint": np.exp(lq), "q_y": np.exp(lqy)}
    else:
        _, lq, lr, tr, st = k.lp_ao(lw, a.alpha, logp, lq0, False, cfg.tolerance, cfg.max_iterations)
        trace = AOTrace.from_kernel(tr, st, +1)
        opt = {"q_joint": np.exp(lq), "r": np.exp(lr)}
    return _result(trace.final_value, trace, cfg, opt, _lp_flags(a))
