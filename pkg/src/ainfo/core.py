"""Probability objects and the basic information measures.

Every quantity is in nats.  Sums that involve powers of probabilities are
accumulated with log-sum-exp so that large orders (alpha around 5 and above)
on small probabilities do not underflow.

Zero conventions used throughout:

* ``0 * log 0 = 0`` and ``0 ** t = 0`` for ``t > 0``;
* a term whose base is zero and whose exponent is negative is dropped only
  when its multiplying weight is exactly zero, otherwise the sum is ``+inf``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

import numpy as np
from scipy.special import entr, logsumexp, rel_entr

__all__ = [
    "ALPHA_ONE_GUARD",
    "SUM_TOL",
    "AlphaParam",
    "Channel",
    "DomainError",
    "Distribution",
    "JointDistribution",
    "ValidationError",
    "arimoto_conditional_entropy",
    "as_alpha",
    "gallager_e0",
    "joint_from",
    "kl_divergence",
    "marginal_x",
    "marginal_y",
    "posterior",
    "renyi_divergence",
    "renyi_entropy",
    "shannon_entropy",
    "shannon_mi",
    "tilted_distribution",
]

SUM_TOL = 1e-9
ALPHA_ONE_GUARD = 1e-6


class ValidationError(ValueError):
    """Input data does not describe a valid probability object."""


class DomainError(ValueError):
    """A parameter lies outside the domain of the requested quantity."""


def _log(x):
    with np.errstate(divide="ignore"):
        return np.log(x)


def _weighted_log_terms(weight, log_weight, expo, log_base):
    """``log(weight * base**expo)`` with zero-weight terms dropped (-inf)."""
    with np.errstate(invalid="ignore"):
        out = log_weight + expo * log_base
    return np.where(weight > 0, out, -np.inf)


def _checked_array(values, ndim: int, what: str) -> np.ndarray:
    arr = np.array(values, dtype=np.float64)
    if arr.ndim != ndim:
        raise ValidationError(f"{what} must be {ndim}-dimensional, got shape {arr.shape}")
    if arr.size == 0:
        raise ValidationError(f"{what} is empty")
    if not np.all(np.isfinite(arr)):
        raise ValidationError(f"{what} contains non-finite entries")
    if np.any(arr < 0):
        raise ValidationError(f"{what} contains negative entries")
    return arr


def _renormalize(arr: np.ndarray, axis, what: str) -> np.ndarray:
    s = arr.sum(axis=axis, keepdims=axis is not None)
    if np.any(np.abs(s - 1.0) > SUM_TOL):
        worst = float(np.max(np.abs(s - 1.0)))
        raise ValidationError(f"{what} does not sum to 1 (off by {worst:.3g})")
    arr = arr / s
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class Distribution:
    """Probability vector on a finite alphabet.

    Sums within ``1e-9`` of one are renormalized; anything further off is
    rejected.  Use :meth:`from_weights` to normalize arbitrary non-negative
    weights.
    """

    probs: np.ndarray

    def __post_init__(self):
        arr = _checked_array(self.probs, 1, "distribution")
        object.__setattr__(self, "probs", _renormalize(arr, None, "distribution"))

    @classmethod
    def from_weights(cls, weights) -> "Distribution":
        w = _checked_array(weights, 1, "weights")
        total = w.sum()
        if total <= 0:
            raise ValidationError("weights sum to zero")
        return cls(w / total)

    @classmethod
    def uniform(cls, n: int) -> "Distribution":
        return cls(np.full(n, 1.0 / n))

    @property
    def alphabet_size(self) -> int:
        return self.probs.shape[0]

    def __len__(self):
        return self.alphabet_size

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.probs, dtype=dtype)


@dataclass(frozen=True)
class Channel:
    """Row-stochastic matrix; ``rows[i, j]`` is P(output j | input i).

    Reverse channels r(x|y) use the same type with rows indexed by y.
    """

    rows: np.ndarray
    name: str | None = field(default=None, compare=False)

    def __post_init__(self):
        arr = _checked_array(self.rows, 2, "channel")
        object.__setattr__(self, "rows", _renormalize(arr, 1, "channel rows"))

    @classmethod
    def from_weights(cls, weights, name=None) -> "Channel":
        w = _checked_array(weights, 2, "weights")
        s = w.sum(axis=1, keepdims=True)
        if np.any(s <= 0):
            raise ValidationError("a weight row sums to zero")
        return cls(w / s, name=name)

    @classmethod
    def identity(cls, n: int) -> "Channel":
        return cls(np.eye(n))

    @property
    def x_size(self) -> int:
        return self.rows.shape[0]

    @property
    def y_size(self) -> int:
        return self.rows.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows.shape

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.rows, dtype=dtype)


@dataclass(frozen=True)
class JointDistribution:
    """Probability matrix on X x Y."""

    probs: np.ndarray

    def __post_init__(self):
        arr = _checked_array(self.probs, 2, "joint distribution")
        object.__setattr__(self, "probs", _renormalize(arr, None, "joint distribution"))

    @property
    def x_size(self) -> int:
        return self.probs.shape[0]

    @property
    def y_size(self) -> int:
        return self.probs.shape[1]

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.probs, dtype=dtype)


@dataclass(frozen=True)
class AlphaParam:
    """Validated order alpha in (0, 1) U (1, inf).

    Orders closer to 1 than ``1e-6`` are rejected; callers should use the
    Shannon quantities there (every public function taking an order accepts
    exactly ``1.0`` and dispatches to them).
    """

    alpha: float

    def __post_init__(self):
        a = float(self.alpha)
        if not np.isfinite(a) or a <= 0:
            raise DomainError(f"alpha must be positive and finite, got {a}")
        if abs(a - 1.0) < ALPHA_ONE_GUARD:
            raise DomainError(
                f"alpha={a!r} is within {ALPHA_ONE_GUARD:g} of 1; use the Shannon quantities"
            )
        object.__setattr__(self, "alpha", a)

    @property
    def ratio(self) -> float:
        """alpha / (alpha - 1)"""
        return self.alpha / (self.alpha - 1.0)

    @property
    def neg_ratio(self) -> float:
        """alpha / (1 - alpha)"""
        return self.alpha / (1.0 - self.alpha)

    @property
    def beta(self) -> float:
        """1 - 1/alpha, the exponent on reverse channels."""
        return 1.0 - 1.0 / self.alpha

    @property
    def rho(self) -> float:
        """Gallager parameter 1/alpha - 1."""
        return 1.0 / self.alpha - 1.0

    def __float__(self):
        return self.alpha


AlphaLike = Union[AlphaParam, float, int]


def as_alpha(alpha: AlphaLike) -> AlphaParam | None:
    """Coerce to :class:`AlphaParam`; exactly 1 returns ``None`` (Shannon)."""
    if isinstance(alpha, AlphaParam):
        return alpha
    if float(alpha) == 1.0:
        return None
    return AlphaParam(float(alpha))


def _probs(p) -> np.ndarray:
    if isinstance(p, (Distribution, JointDistribution)):
        return p.probs
    if isinstance(p, Channel):
        return p.rows
    return np.asarray(p, dtype=np.float64)


def _check_dims(p_X: Distribution, ch: Channel):
    if p_X.alphabet_size != ch.x_size:
        raise ValidationError(
            f"input distribution has {p_X.alphabet_size} symbols, channel expects {ch.x_size}"
        )


# ---------------------------------------------------------------------------
# entropies and divergences
# ---------------------------------------------------------------------------


def shannon_entropy(p) -> float:
    """Shannon entropy ``-sum p log p`` in nats."""
    return float(entr(_probs(p)).sum())


def kl_divergence(p, q) -> float:
    """KL divergence D(p||q); ``+inf`` when p is not dominated by q."""
    pa, qa = _probs(p), _probs(q)
    if pa.shape != qa.shape:
        raise ValidationError(f"shape mismatch {pa.shape} vs {qa.shape}")
    return float(rel_entr(pa, qa).sum())


def renyi_divergence(alpha: AlphaLike, p, q) -> float:
    """Renyi divergence of order alpha, ``1/(a-1) log sum p^a q^(1-a)``.

    Returns ``+inf`` on support violation for alpha > 1 and for mutually
    singular arguments when alpha < 1.
    """
    a = as_alpha(alpha)
    if a is None:
        return kl_divergence(p, q)
    pa, qa = _probs(p), _probs(q)
    if pa.shape != qa.shape:
        raise ValidationError(f"shape mismatch {pa.shape} vs {qa.shape}")
    al = a.alpha
    terms = _weighted_log_terms(pa, al * _log(pa), 1.0 - al, _log(qa))
    s = logsumexp(terms)
    if al > 1 and s == np.inf:
        return np.inf
    if al < 1 and s == -np.inf:
        return np.inf
    return float(max(s / (al - 1.0), 0.0))


def renyi_entropy(alpha: AlphaLike, p) -> float:
    """Renyi entropy ``1/(1-a) log sum p^a``."""
    a = as_alpha(alpha)
    if a is None:
        return shannon_entropy(p)
    pa = _probs(p)
    terms = np.where(pa > 0, a.alpha * _log(pa), -np.inf)
    return float(logsumexp(terms) / (1.0 - a.alpha))


def arimoto_conditional_entropy(alpha: AlphaLike, p_X: Distribution, ch: Channel) -> float:
    """Arimoto conditional entropy H_a(X|Y) of the pair (p_X, ch)."""
    _check_dims(p_X, ch)
    a = as_alpha(alpha)
    joint = p_X.probs[:, None] * ch.rows
    if a is None:
        return shannon_entropy(joint) - shannon_entropy(joint.sum(axis=0))
    al = a.alpha
    inner = logsumexp(np.where(joint > 0, al * _log(joint), -np.inf), axis=0)
    return float(a.neg_ratio * logsumexp(inner / al))


def tilted_distribution(alpha: AlphaLike, p: Distribution) -> Distribution:
    """alpha-tilted (escort) distribution ``p^a / sum p^a``."""
    a = as_alpha(alpha)
    if a is None:
        return p
    pa = _probs(p)
    logw = np.where(pa > 0, a.alpha * _log(pa), -np.inf)
    return Distribution(np.exp(logw - logsumexp(logw)))


def gallager_e0(rho: float, p_X: Distribution, ch: Channel) -> float:
    """Gallager's E0(rho, p_X) = -log sum_y (sum_x p(x) W(y|x)^(1/(1+rho)))^(1+rho)."""
    if not rho > -1:
        raise DomainError(f"Gallager E0 needs rho > -1, got {rho}")
    _check_dims(p_X, ch)
    s = 1.0 + rho
    with np.errstate(invalid="ignore"):
        terms = _log(p_X.probs)[:, None] + _log(ch.rows) / s
    terms = np.where(ch.rows > 0, terms, -np.inf)
    inner = logsumexp(terms, axis=0)
    return float(-logsumexp(s * inner))


# ---------------------------------------------------------------------------
# joint / marginal / posterior plumbing
# ---------------------------------------------------------------------------


def joint_from(p_X: Distribution, ch: Channel) -> JointDistribution:
    _check_dims(p_X, ch)
    return JointDistribution(p_X.probs[:, None] * ch.rows)


def marginal_x(j: JointDistribution) -> Distribution:
    return Distribution(j.probs.sum(axis=1))


def marginal_y(j: JointDistribution) -> Distribution:
    return Distribution(j.probs.sum(axis=0))


def posterior(j: JointDistribution) -> tuple[Channel, tuple[int, ...]]:
    """Reverse channel r(x|y) as a :class:`Channel` with rows indexed by y.

    Outputs with zero marginal get a uniform row; their indices are returned
    as the second element so callers can see the fallback happened.
    """
    py = j.probs.sum(axis=0)
    degenerate = tuple(int(y) for y in np.flatnonzero(py <= 0))
    rows = np.empty((j.y_size, j.x_size))
    ok = py > 0
    rows[ok] = (j.probs[:, ok] / py[ok]).T
    rows[~ok] = 1.0 / j.x_size
    return Channel(rows), degenerate


def shannon_mi(p_X: Distribution, ch: Channel) -> float:
    """Shannon mutual information I(X;Y) = D(p_X W || p_X p_Y)."""
    _check_dims(p_X, ch)
    joint = p_X.probs[:, None] * ch.rows
    prod = p_X.probs[:, None] * joint.sum(axis=0)[None, :]
    return max(float(rel_entr(joint, prod).sum()), 0.0)
