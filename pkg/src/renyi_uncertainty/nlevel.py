"""N-level systems: amplitudes related by the discrete Fourier transformation.

Convention: ``a~_k = N**-0.5 * sum_l exp(2 pi i k l / N) a_l`` with ``k, l``
running over ``1..N``. Shifting to 0-based indices only multiplies the
amplitudes by phases, so every probability is convention independent.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .entropy import ProbVec
from .errors import DomainError, ValidationError

BASES = ("position_like", "momentum_like")


@dataclass(frozen=True)
class NLevelState:
    amps: np.ndarray
    basis: str = "position_like"

    def __post_init__(self):
        a = np.array(self.amps, dtype=complex).ravel()
        if a.size < 2:
            raise ValidationError("an N-level state needs N >= 2")
        if self.basis not in BASES:
            raise ValidationError(f"unknown basis {self.basis!r}")
        norm = np.sum(np.abs(a) ** 2)
        if abs(norm - 1.0) > 1e-12:
            raise ValidationError(f"state has squared norm {norm!r}, not 1")
        a = a / math.sqrt(norm)
        a.setflags(write=False)
        object.__setattr__(self, "amps", a)

    @property
    def n(self) -> int:
        return self.amps.size

    @classmethod
    def basis_state(cls, n: int, index: int) -> "NLevelState":
        a = np.zeros(n, dtype=complex)
        a[index] = 1.0
        return cls(a)

    @classmethod
    def uniform(cls, n: int) -> "NLevelState":
        return cls(np.full(n, 1 / math.sqrt(n), dtype=complex))


def dft_matrix(n: int) -> np.ndarray:
    """Dense ``N x N`` transformation matrix, 1-based indices."""
    k = np.arange(1, n + 1)
    return np.exp(2j * math.pi * np.outer(k, k) / n) / math.sqrt(n)


def _twiddle(n):
    return np.exp(2j * math.pi * np.arange(n) / n)


def _forward(a):
    n = a.size
    # (k'+1)(l'+1) = k'l' + k' + l' + 1 with 0-based k', l'
    return math.sqrt(n) * np.exp(2j * math.pi / n) * _twiddle(n) * np.fft.ifft(a * _twiddle(n))


def _backward(b):
    return np.conj(_forward(np.conj(b)))


def dft(state: NLevelState) -> NLevelState:
    """Position-like amplitudes to momentum-like ones (momentum input is inverted)."""
    if state.basis == "momentum_like":
        return idft(state)
    return NLevelState(_forward(state.amps), "momentum_like")


def idft(state: NLevelState) -> NLevelState:
    """Inverse of :func:`dft` (the conjugate-transpose matrix)."""
    if state.basis != "momentum_like":
        raise ValidationError("idft expects momentum-like amplitudes")
    return NLevelState(_backward(state.amps), "position_like")


def nlevel_probs(state: NLevelState) -> ProbVec:
    """``|a_l|^2`` in the state's own basis."""
    return ProbVec(np.abs(state.amps) ** 2, labels=np.arange(1, state.n + 1))


def p_norm(v, p: float) -> float:
    """``(sum |v_i|**p)**(1/p)`` for ``p >= 1``."""
    if not p >= 1:
        raise DomainError(f"p-norm needs p >= 1, got {p}")
    v = np.abs(np.asarray(v, dtype=complex))
    if np.isinf(p):
        return float(v.max())
    vmax = v.max()
    if vmax == 0:
        return 0.0
    return float(vmax * np.sum((v / vmax) ** p) ** (1.0 / p))


def dft_norm_constant(n: int, p: float) -> float:
    """``N**(1/(2p) - 1/(2q))`` with ``1/p + 1/q = 1``: the (p,q)-norm of the DFT for ``p >= 2``."""
    if not p >= 2:
        raise DomainError("the DFT norm constant is stated for p >= 2")
    q = p / (p - 1)
    return n ** (1 / (2 * p) - 1 / (2 * q))
