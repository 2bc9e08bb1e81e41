"""Alternating-optimization solvers for the alpha-capacity.

Four algorithms, named after the objective each one climbs:

``S1``
    input distribution vs. reverse channel (any alpha != 1);
``JO``
    reverse channel, input distribution and surrogate joint (alpha > 1);
``C``
    reverse channel, surrogate channel and input distribution (alpha > 1);
``LP``
    reverse channel, input distribution and a product-form surrogate joint
    (alpha > 1).

All of them converge to the same number for alpha > 1.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from ainfo import _backend
from ainfo.ao import AOConfig, AOTrace, Init
from ainfo.core import AlphaLike, AlphaParam, Channel, DomainError, Distribution, _log, as_alpha
from ainfo.mi import _custom

__all__ = [
    "AlgorithmId",
    "CapacityResult",
    "IncompatibleAlpha",
    "capacity_c",
    "capacity_jo",
    "capacity_lp",
    "capacity_s1",
    "run_capacity",
]


class IncompatibleAlpha(DomainError):
    """The requested algorithm is not defined for this order."""


class AlgorithmId(enum.Enum):
    S1 = "s1"
    JO = "jo"
    C = "c"
    LP = "lp"

    @property
    def needs_alpha_above_one(self) -> bool:
        return self is not AlgorithmId.S1


@dataclass(frozen=True)
class CapacityResult:
    value: float
    iterations: int
    trace: AOTrace
    achiever_p_X: Distribution
    auxiliary: dict = field(default_factory=dict)
    algorithm: AlgorithmId = AlgorithmId.S1
    alpha: float = float("nan")

    @property
    def converged(self) -> bool:
        return self.trace.converged


def _alpha_for(algo: AlgorithmId, alpha: AlphaLike) -> AlphaParam:
    a = as_alpha(alpha)
    if a is None:
        raise IncompatibleAlpha(f"algorithm {algo.value} needs alpha != 1")
    if algo.needs_alpha_above_one and a.alpha <= 1:
        raise IncompatibleAlpha(f"algorithm {algo.value} needs alpha > 1, got {a.alpha}")
    return a


def _init_input(cfg: AOConfig, ch: Channel) -> np.ndarray:
    if cfg.initialization is Init.CUSTOM:
        if np.shape(cfg.custom_init) == ch.shape:
            p = _custom(cfg, ch.shape, "surrogate joint").sum(axis=1)
        else:
            p = _custom(cfg, (ch.x_size,), "input distribution")
        return p / p.sum()
    return np.full(ch.x_size, 1.0 / ch.x_size)


def _init_joint(cfg: AOConfig, ch: Channel) -> np.ndarray:
    init = cfg.initialization
    if init is Init.INPUT_TIMES_CHANNEL:
        return ch.rows / ch.x_size
    if init is Init.CUSTOM:
        q = _custom(cfg, ch.shape, "surrogate joint")
        return q / q.sum()
    return np.full(ch.shape, 1.0 / (ch.x_size * ch.y_size))


def _c(x) -> np.ndarray:
    return np.ascontiguousarray(x, dtype=np.float64)


def _pack(algo, a, trace_arr, status, logp, aux) -> CapacityResult:
    trace = AOTrace.from_kernel(trace_arr, status, +1)
    return CapacityResult(
        value=trace.final_value,
        iterations=trace.iterations,
        trace=trace,
        achiever_p_X=Distribution.from_weights(np.exp(logp)),
        auxiliary={k: np.exp(v) for k, v in aux.items()},
        algorithm=algo,
        alpha=a.alpha,
    )


def capacity_s1(alpha: AlphaLike, ch: Channel, cfg: AOConfig | None = None) -> CapacityResult:
    """Alternate ``r(x|y) ~ p(x) W(y|x)^a`` and ``p(x) ~ c_x^(a/(a-1))``.

    ``c_x = sum_y W(y|x) r(x|y)^(1-1/a)``.  Each cycle's objective is
    ``log sum_x c_x^(a/(a-1))``, which is non-decreasing in both order
    regimes.
    """
    cfg = cfg or AOConfig()
    a = _alpha_for(AlgorithmId.S1, alpha)
    logp, logr, tr, st = _backend.kernels.s1(
        _c(_log(ch.rows)), a.alpha, _c(_log(_init_input(cfg, ch))), cfg.tolerance, cfg.max_iterations
    )
    return _pack(AlgorithmId.S1, a, tr, st, logp, {"r": logr})


def capacity_jo(alpha: AlphaLike, ch: Channel, cfg: AOConfig | None = None) -> CapacityResult:
    cfg = cfg or AOConfig()
    a = _alpha_for(AlgorithmId.JO, alpha)
    logq, logr, logp, tr, st = _backend.kernels.jo(
        _c(_log(ch.rows)), a.alpha, _c(_log(_init_joint(cfg, ch))), cfg.tolerance, cfg.max_iterations
    )
    return _pack(AlgorithmId.JO, a, tr, st, logp, {"q_joint": logq, "r": logr})


def capacity_c(alpha: AlphaLike, ch: Channel, cfg: AOConfig | None = None) -> CapacityResult:
    """Augustin-Csiszar route: the two-block MI iteration plus an input step
    ``p(x) ~ exp(sum_y qt log r + a/(1-a) sum_y qt log(qt/W))``."""
    cfg = cfg or AOConfig()
    a = _alpha_for(AlgorithmId.C, alpha)
    q0 = _init_joint(cfg, ch)
    p0 = q0.sum(axis=1)
    with np.errstate(invalid="ignore", divide="ignore"):
        qt0 = np.where(p0[:, None] > 0, q0 / p0[:, None], ch.rows)
    logp, logqt, logr, tr, st = _backend.kernels.c_ao(
        _c(_log(ch.rows)), a.alpha, _c(_log(p0)), _c(_log(qt0)), True,
        cfg.tolerance, cfg.max_iterations,
    )
    return _pack(AlgorithmId.C, a, tr, st, logp, {"q_tilde": logqt, "r": logr})


def capacity_lp(alpha: AlphaLike, ch: Channel, cfg: AOConfig | None = None) -> CapacityResult:
    cfg = cfg or AOConfig()
    a = _alpha_for(AlgorithmId.LP, alpha)
    q0 = _init_joint(cfg, ch)
    logp, logq, logr, tr, st = _backend.kernels.lp_ao(
        _c(_log(ch.rows)), a.alpha, _c(_log(q0.sum(axis=1))), _c(_log(q0)), True,
        cfg.tolerance, cfg.max_iterations,
    )
    return _pack(AlgorithmId.LP, a, tr, st, logp, {"q_joint": logq, "r": logr})


_DISPATCH = {
    AlgorithmId.S1: capacity_s1,
    AlgorithmId.JO: capacity_jo,
    AlgorithmId.C: capacity_c,
    AlgorithmId.LP: capacity_lp,
}


def run_capacity(algo, alpha: AlphaLike, ch: Channel, cfg: AOConfig | None = None) -> CapacityResult:
    """Run algorithm ``algo`` (an :class:`AlgorithmId` or its string value)."""
    algo = AlgorithmId(algo.lower() if isinstance(algo, str) else algo)
    _alpha_for(algo, alpha)
    return _DISPATCH[algo](alpha, ch, cfg)
