"""Rényi, Shannon, symmetrized and integral entropies (natural log, nats).

All functions are pure. Discrete entropies take a :class:`ProbVec` (or any
array-like that validates as one); integral entropies take a
:class:`~renyi_uncertainty.states.DensityGrid` and use the composite midpoint
rule on its cells.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import DomainError, ValidationError

#: |alpha - 1| below this routes to the Shannon formula.
SHANNON_SWITCH = 1e-6
#: Accepted deviation of the total probability from one (renormalized silently).
NORM_TOL = 1e-8


@dataclass(frozen=True)
class ProbVec:
    """Finite discrete probability distribution.

    Parameters
    ----------
    probs : array-like
        Nonnegative entries summing to one within ``NORM_TOL``. Small drift is
        removed by renormalization.
    labels : array-like of int, optional
        Bin indices attached to the entries (e.g. ``k`` in ``[k*dp, (k+1)*dp)``).
    """

    probs: np.ndarray
    labels: Optional[np.ndarray] = field(default=None, compare=False)

    def __post_init__(self):
        p = np.array(self.probs, dtype=float).ravel()
        if p.size == 0:
            raise ValidationError("empty probability vector")
        if not np.all(np.isfinite(p)):
            raise ValidationError("probabilities must be finite")
        if np.any(p < 0):
            raise ValidationError(f"negative probability {p.min():.3e}")
        total = p.sum()
        if abs(total - 1.0) > NORM_TOL:
            raise ValidationError(f"probabilities sum to {total!r}, not 1")
        p = p / total
        p.setflags(write=False)
        object.__setattr__(self, "probs", p)
        if self.labels is not None:
            lab = np.asarray(self.labels, dtype=int).ravel()
            if lab.shape != p.shape:
                raise ValidationError("labels and probs differ in length")
            lab.setflags(write=False)
            object.__setattr__(self, "labels", lab)

    def __len__(self):
        return self.probs.size

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.probs, dtype=dtype)

    @classmethod
    def product(cls, a: "ProbVec", b: "ProbVec") -> "ProbVec":
        """Joint distribution of two independent variables, flattened."""
        return cls(np.outer(as_probvec(a).probs, as_probvec(b).probs).ravel())


def as_probvec(p) -> ProbVec:
    return p if isinstance(p, ProbVec) else ProbVec(p)


@dataclass(frozen=True)
class OrderPair:
    """Conjugate Rényi orders with ``1/alpha + 1/beta = 2``.

    Built from ``alpha`` (``beta`` derived) or from the symmetric parameter
    ``s`` via :meth:`from_s`, where ``alpha = 1/(1-s)`` and ``beta = 1/(1+s)``.
    """

    alpha: float
    beta: float = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "beta", conjugate_order(self.alpha))

    @property
    def s(self) -> float:
        return 1.0 - 1.0 / self.alpha

    @classmethod
    def from_s(cls, s: float) -> "OrderPair":
        if not -1.0 < s < 1.0:
            raise DomainError(f"s must lie in (-1, 1), got {s}")
        return cls(1.0 / (1.0 - s))


@dataclass(frozen=True)
class EntropyValue:
    """An entropy in nats together with its order and kind."""

    value: float
    order: float
    kind: str = "discrete"

    def __post_init__(self):
        if self.kind not in ("discrete", "continuous"):
            raise ValueError(f"unknown entropy kind {self.kind!r}")

    def __float__(self):
        return float(self.value)


def conjugate_order(alpha: float) -> float:
    """Return ``beta`` with ``1/alpha + 1/beta = 2``, i.e. ``alpha/(2 alpha - 1)``.

    The map is an involution on ``(1/2, inf)``.
    """
    alpha = float(alpha)
    if not alpha > 0.5 or not np.isfinite(alpha):
        raise DomainError(f"conjugate order needs alpha > 1/2, got {alpha}")
    if alpha == 1.0:
        return 1.0
    return alpha / (2.0 * alpha - 1.0)


def _check_order(alpha):
    alpha = float(alpha)
    if not alpha > 0 or not np.isfinite(alpha):
        raise DomainError(f"Rényi order must be a finite positive number, got {alpha}")
    return alpha


def _log_power_sum(w, alpha):
    """``ln sum(w**alpha)`` for nonnegative weights, scaled to avoid underflow."""
    w = w[w > 0]
    wmax = w.max()
    return alpha * np.log(wmax) + np.log(np.sum((w / wmax) ** alpha))


def shannon_entropy(p) -> EntropyValue:
    """``-sum p ln p`` with ``0 ln 0 = 0``."""
    p = as_probvec(p).probs
    nz = p[p > 0]
    h = float(-np.sum(nz * np.log(nz)))
    return EntropyValue(max(h, 0.0), 1.0, "discrete")


def renyi_entropy(p, alpha: float) -> EntropyValue:
    """Rényi entropy of order ``alpha`` in nats.

    ``H_alpha = ln(sum p_k**alpha) / (1 - alpha)``; within ``SHANNON_SWITCH`` of
    ``alpha = 1`` the Shannon entropy is returned instead.

    Examples
    --------
    >>> round(renyi_entropy([0.75, 0.25], 2).value, 6)
    0.470004
    """
    alpha = _check_order(alpha)
    pv = as_probvec(p)
    if abs(alpha - 1.0) < SHANNON_SWITCH:
        return EntropyValue(shannon_entropy(pv).value, alpha, "discrete")
    h = float(_log_power_sum(pv.probs, alpha) / (1.0 - alpha))
    # rounding can leave -1e-17 for one-hot vectors
    return EntropyValue(max(h, 0.0), alpha, "discrete")


def symmetrized_entropy(p, s: float) -> EntropyValue:
    """Average of the entropies at the conjugate orders ``1/(1-s)`` and ``1/(1+s)``.

    Even in ``s``; equal to the Shannon entropy at ``s = 0``.
    """
    s = float(s)
    if not -1.0 < s < 1.0:
        raise DomainError(f"s must lie in (-1, 1), got {s}")
    a = abs(s)
    pv = as_probvec(p)
    h = 0.5 * (renyi_entropy(pv, 1.0 / (1.0 - a)).value + renyi_entropy(pv, 1.0 / (1.0 + a)).value)
    return EntropyValue(h, s, "discrete")


def continuous_renyi(rho, alpha: float) -> EntropyValue:
    """Integral Rényi entropy ``ln(int rho**alpha) / (1 - alpha)`` of a density grid.

    Uses the composite midpoint rule (sample value times cell width); the
    Shannon branch returns ``-int rho ln rho``. The result may be negative.
    """
    alpha = _check_order(alpha)
    w = np.asarray(rho.values, dtype=float)
    h = rho.grid.spacing
    if abs(alpha - 1.0) < SHANNON_SWITCH:
        return EntropyValue(continuous_shannon(rho).value, alpha, "continuous")
    val = (_log_power_sum(w, alpha) + np.log(h)) / (1.0 - alpha)
    return EntropyValue(float(val), alpha, "continuous")


def continuous_shannon(rho) -> EntropyValue:
    """``-int rho ln rho`` by the midpoint rule."""
    w = np.asarray(rho.values, dtype=float)
    nz = w[w > 0]
    return EntropyValue(float(-np.sum(nz * np.log(nz)) * rho.grid.spacing), 1.0, "continuous")


def continuous_symmetrized(rho, s: float) -> EntropyValue:
    """Integral counterpart of :func:`symmetrized_entropy`."""
    s = float(s)
    if not -1.0 < s < 1.0:
        raise DomainError(f"s must lie in (-1, 1), got {s}")
    a = abs(s)
    h = 0.5 * (continuous_renyi(rho, 1.0 / (1.0 - a)).value + continuous_renyi(rho, 1.0 / (1.0 + a)).value)
    return EntropyValue(h, s, "continuous")
