"""Right-hand sides of the entropic uncertainty relations and verdicts.

Conventions: ``alpha`` is the order used on the momentum side (or the
``M_z`` / DFT side), ``beta = alpha/(2 alpha - 1)`` on the position (angle)
side. ``swap=True`` exchanges the two; the bounds are symmetric in
``alpha <-> beta`` so the right-hand side does not change.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, replace
from typing import Optional

import numpy as np

from . import entropy as ent
from .entropy import EntropyValue, OrderPair, conjugate_order
from .errors import DomainError, ValidationError
from .nlevel import NLevelState, dft, nlevel_probs
from .states import (
    AngularState,
    GridWaveFunction,
    MixedState,
    aligned_grid,
    angular_density,
    angular_momentum_probs,
    bin_probabilities,
    density_on,
    fourier_transform,
    mix,
    Mixture,
    support,
    zero_pad,
)

#: gap >= -TOL counts as satisfied
TOL = 1e-9
#: |gap| <= SAT_TOL counts as saturated
SAT_TOL = 1e-6

_SERIES = 1e-6


# -- bound formulas --------------------------------------------------------------


def _log_ratio(x):
    """``ln(x)/(1 - x)``, continuous at ``x = 1`` where it equals -1."""
    u = x - 1.0
    if abs(u) < _SERIES:
        return -(1.0 - u / 2 + u * u / 3 - u ** 3 / 4)
    return math.log(x) / (1.0 - x)


def _order_term(alpha, beta):
    """``-(ln a/(1-a) + ln b/(1-b))/2``; equals 1 at ``a = b = 1``."""
    return -0.5 * (_log_ratio(alpha) + _log_ratio(beta))


def _check_positive(**kw):
    for name, v in kw.items():
        if not (v > 0 and math.isfinite(v)):
            raise DomainError(f"{name} must be positive and finite, got {v}")


def _check_ndim(n_dim):
    if int(n_dim) != n_dim or n_dim < 1:
        raise DomainError(f"n_dim must be a positive integer, got {n_dim}")
    return int(n_dim)


def _phase_area_term(dx, dp, hbar):
    _check_positive(dx=dx, dp=dp, hbar=hbar)
    return math.log(dx * dp / (math.pi * hbar))


def bound_xp_binned(alpha: float, dx: float, dp: float, hbar: float = 1.0, n_dim: int = 1) -> float:
    """Lower bound on ``H_alpha(momentum bins) + H_beta(position bins)``.

    ``-(n/2)(ln a/(1-a) + ln b/(1-b)) - n ln(dx dp / (pi hbar))``; at ``alpha = 1``
    this is ``-n ln(dx dp / (e pi hbar))``.
    """
    beta = conjugate_order(alpha)
    n = _check_ndim(n_dim)
    return n * (_order_term(float(alpha), beta) - _phase_area_term(dx, dp, hbar))


def bound_xp_continuous(alpha: float, n_dim: int = 1) -> float:
    """Lower bound on the sum of integral entropies (hbar = 1).

    ``-ln(a/pi)/(2(1-a)) - ln(b/pi)/(2(1-b))`` per dimension, ``ln(e pi)`` at
    ``alpha = 1``. Uses ``1/(1-a) + 1/(1-b) = 2`` to split off ``ln pi``.
    """
    beta = conjugate_order(alpha)
    n = _check_ndim(n_dim)
    return n * (_order_term(float(alpha), beta) + math.log(math.pi))


def babenko_beckner_k(p: float, hbar: float = 1.0) -> float:
    """(p,q)-norm of the physically normalized Fourier transform, ``p >= 2``."""
    if not p >= 2:
        raise DomainError(f"the sharp constant is stated for p >= 2, got {p}")
    _check_positive(hbar=hbar)
    q = p / (p - 1)
    return (p / (2 * math.pi * hbar)) ** (-1 / (2 * p)) * (q / (2 * math.pi * hbar)) ** (1 / (2 * q))


def babenko_beckner_n(alpha: float, hbar: float = 1.0) -> float:
    """Density form of the constant: ``(a/(pi hbar))**(-1/(2a)) (b/(pi hbar))**(1/(2b))``.

    Defined for ``alpha >= 1`` (so that ``alpha >= beta``); equals ``k(2 alpha)**2``.
    """
    if not alpha >= 1:
        raise DomainError(f"constant is defined for alpha >= 1, got {alpha}")
    _check_positive(hbar=hbar)
    beta = conjugate_order(alpha)
    return (alpha / (math.pi * hbar)) ** (-1 / (2 * alpha)) * (beta / (math.pi * hbar)) ** (1 / (2 * beta))


def bound_angle(dphi: float) -> float:
    """``-ln(dphi / 2 pi)``, independent of the orders."""
    if not 0 < dphi <= 2 * math.pi * (1 + 1e-15):
        raise DomainError(f"angular resolution must lie in (0, 2 pi], got {dphi}")
    return -math.log(min(dphi / (2 * math.pi), 1.0))


def bound_angle_continuous() -> float:
    return math.log(2 * math.pi)


def bound_nlevel(n: int) -> float:
    if int(n) != n or n < 2:
        raise DomainError(f"N-level bound needs an integer N >= 2, got {n}")
    return math.log(n)


def bound_xp_symmetrized(s: float, dx: float, dp: float, hbar: float = 1.0, n_dim: int = 1) -> float:
    """Bound for the symmetrized entropies.

    ``(ln(1-s^2) + ln((1+s)/(1-s))/s)/2 - ln(dx dp/(pi hbar))``, even in ``s``
    and equal to the ordinary bound at ``alpha = 1/(1-s)``.
    """
    s = float(s)
    if not -1 < s < 1:
        raise DomainError(f"s must lie in (-1, 1), got {s}")
    a = abs(s)
    n = _check_ndim(n_dim)
    return n * (_order_term(1.0 / (1.0 - a), 1.0 / (1.0 + a)) - _phase_area_term(dx, dp, hbar))


def bound_xp_same_order(beta: float, dx: float, dp: float, hbar: float = 1.0) -> float:
    """Bound on ``H_beta(p) + H_beta(x)`` for ``1/2 < beta <= 1``.

    ``-ln b - ((b - 1/2)/(1 - b)) ln(2b - 1) - ln(dx dp/(pi hbar))``.
    """
    beta = float(beta)
    if not 0.5 < beta <= 1.0:
        raise DomainError(f"beta must lie in (1/2, 1], got {beta}")
    u = 1.0 - beta
    if u < _SERIES:
        term = -1.0 + u + 2.0 * u * u / 3.0
    else:
        term = (beta - 0.5) / u * math.log1p(-2.0 * u)
    return -math.log(beta) - term - _phase_area_term(dx, dp, hbar)


# -- reports -----------------------------------------------------------------------


def _round15(v):
    if isinstance(v, bool) or v is None or isinstance(v, str):
        return v
    if isinstance(v, (int, np.integer)):
        return int(v)
    if isinstance(v, (float, np.floating)):
        return float(f"{float(v):.15g}")
    if isinstance(v, dict):
        return {k: _round15(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_round15(x) for x in v]
    return v


@dataclass(frozen=True)
class BoundReport:
    """Verdict of one inequality: ``lhs_p + lhs_x >= rhs``.

    ``lhs_p`` is the momentum-side (or ``M_z`` / DFT-side) entropy, ``lhs_x``
    the position-side (or angle / computational-basis) one.
    """

    lhs_p: EntropyValue
    lhs_x: EntropyValue
    rhs: float
    gap: float
    satisfied: bool
    saturated: bool
    params: dict = field(default_factory=dict)

    @property
    def lhs(self) -> float:
        return self.lhs_p.value + self.lhs_x.value

    @property
    def lhs_terms(self):
        return (self.lhs_p, self.lhs_x)

    @property
    def numerical_boundary(self) -> bool:
        """Gap in ``(-TOL, 0)``: satisfied only thanks to the tolerance."""
        return -TOL <= self.gap < 0

    def to_dict(self) -> dict:
        d = {
            "lhs_p": {"value": self.lhs_p.value, "order": self.lhs_p.order, "kind": self.lhs_p.kind},
            "lhs_x": {"value": self.lhs_x.value, "order": self.lhs_x.order, "kind": self.lhs_x.kind},
            "rhs": self.rhs,
            "gap": self.gap,
            "satisfied": self.satisfied,
            "saturated": self.saturated,
            "params": dict(self.params),
        }
        return _round15(d)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=False)

    @classmethod
    def from_dict(cls, d: dict) -> "BoundReport":
        try:
            return cls(
                lhs_p=EntropyValue(**d["lhs_p"]),
                lhs_x=EntropyValue(**d["lhs_x"]),
                rhs=d["rhs"],
                gap=d["gap"],
                satisfied=bool(d["satisfied"]),
                saturated=bool(d["saturated"]),
                params=dict(d.get("params", {})),
            )
        except (KeyError, TypeError) as exc:
            raise ValidationError(f"malformed report: {exc}") from exc

    @classmethod
    def from_json(cls, text: str) -> "BoundReport":
        return cls.from_dict(json.loads(text))

    def in_base(self, base) -> "BoundReport":
        """Same verdict with every entropy-valued field expressed in log base ``base``."""
        if base in ("e", None) or base == math.e:
            return self
        c = 1.0 / math.log(float(base))
        return replace(
            self,
            lhs_p=replace(self.lhs_p, value=self.lhs_p.value * c),
            lhs_x=replace(self.lhs_x, value=self.lhs_x.value * c),
            rhs=self.rhs * c,
            gap=self.gap * c,
            params={**self.params, "log_base": base},
        )


def make_report(lhs_p: EntropyValue, lhs_x: EntropyValue, rhs: float, params: dict,
                tol: float = TOL, sat_tol: float = SAT_TOL) -> BoundReport:
    gap = lhs_p.value + lhs_x.value - rhs
    satisfied = gap >= -tol
    return BoundReport(lhs_p, lhs_x, float(rhs), float(gap), bool(satisfied),
                       bool(satisfied and abs(gap) <= sat_tol), params)


# -- x / p ------------------------------------------------------------------------


def _components(state):
    if isinstance(state, MixedState):
        return state.states
    if isinstance(state, GridWaveFunction):
        if state.rep != "position":
            raise ValidationError("pass the position-representation wave function")
        return [state]
    raise ValidationError(f"expected a GridWaveFunction or MixedState, got {type(state).__name__}")


def _union_support(densities):
    spans = [support(d) for d in densities]
    return min(s[0] for s in spans), max(s[1] for s in spans)


def _aligned_with(grid, delta, offset):
    h = grid.spacing
    r = delta / h
    s = (grid.x_min - offset) / h
    return abs(r - round(r)) <= 1e-9 * max(1, r) and round(r) >= 1 and abs(s - round(s)) <= 1e-9 * max(1, abs(s))


def binned_xp_distributions(state, dx: float, dp: float, offset_x: float = 0.0,
                            offset_p: float = 0.0, cells_per_conj_spacing: int = 16):
    """Position and momentum bin probabilities of a pure or mixed state.

    Returns ``(q, p)``: ``q`` for bins ``[offset_x + l dx, ...)``, ``p`` for
    ``[offset_p + k dp, ...)``. Densities are evaluated on grids whose cells
    tile the bins exactly; the position grid of the state is used directly
    when it is already commensurate.
    """
    _check_positive(dx=dx, dp=dp)
    comps = _components(state)
    grid, hbar = comps[0].grid, comps[0].hbar

    if _aligned_with(grid, dx, offset_x):
        xgrid = grid
    else:
        lo, hi = _union_support([psi.density() for psi in comps])
        xgrid = aligned_grid(lo, hi, dx, offset_x, max_cell=grid.spacing)
    rho_x = density_on(state, xgrid, "position")

    moms = [fourier_transform(psi) for psi in comps]
    conj = moms[0].grid
    lo, hi = _union_support([m.density() for m in moms])
    pgrid = aligned_grid(lo, hi, dp, offset_p, max_cell=conj.spacing / cells_per_conj_spacing)
    rho_p = density_on(state, pgrid, "momentum")

    return bin_probabilities(rho_x, dx, offset_x), bin_probabilities(rho_p, dp, offset_p)


def verify_xp(state, alpha: float, dx: float, dp: float, offset_x: float = 0.0,
              offset_p: float = 0.0, hbar: Optional[float] = None, swap: bool = False) -> BoundReport:
    """Check ``H_alpha(p bins) + H_beta(x bins) >= bound_xp_binned`` for a state or mixture."""
    pair = OrderPair(alpha)
    comps = _components(state)
    if hbar is not None and not math.isclose(hbar, comps[0].hbar, rel_tol=1e-12):
        raise ValidationError(f"hbar={hbar} differs from the state's hbar={comps[0].hbar}")
    hbar = comps[0].hbar
    q, p = binned_xp_distributions(state, dx, dp, offset_x, offset_p)
    a_p, a_x = (pair.beta, pair.alpha) if swap else (pair.alpha, pair.beta)
    params = {
        "relation": "xp", "alpha": pair.alpha, "beta": pair.beta, "dx": dx, "dp": dp,
        "offset_x": offset_x, "offset_p": offset_p, "hbar": hbar, "n_dim": 1, "swap": bool(swap),
    }
    return make_report(ent.renyi_entropy(p, a_p), ent.renyi_entropy(q, a_x),
                       bound_xp_binned(pair.alpha, dx, dp, hbar), params)


def verify_xp_symmetrized(state, s: float, dx: float, dp: float, offset_x: float = 0.0,
                          offset_p: float = 0.0) -> BoundReport:
    """Same measure on both sides: symmetrized entropies of order ``s``."""
    hbar = _components(state)[0].hbar
    q, p = binned_xp_distributions(state, dx, dp, offset_x, offset_p)
    params = {"relation": "xp-sym", "s": float(s), "dx": dx, "dp": dp,
              "offset_x": offset_x, "offset_p": offset_p, "hbar": hbar, "n_dim": 1}
    return make_report(ent.symmetrized_entropy(p, s), ent.symmetrized_entropy(q, s),
                       bound_xp_symmetrized(s, dx, dp, hbar), params)


def verify_xp_same_order(state, beta: float, dx: float, dp: float, offset_x: float = 0.0,
                         offset_p: float = 0.0) -> BoundReport:
    """``H_beta(p bins) + H_beta(x bins)`` against the same-order bound, ``1/2 < beta <= 1``."""
    hbar = _components(state)[0].hbar
    rhs = bound_xp_same_order(beta, dx, dp, hbar)
    q, p = binned_xp_distributions(state, dx, dp, offset_x, offset_p)
    params = {"relation": "xp-same", "beta": float(beta), "dx": dx, "dp": dp,
              "offset_x": offset_x, "offset_p": offset_p, "hbar": hbar, "n_dim": 1}
    return make_report(ent.renyi_entropy(p, beta), ent.renyi_entropy(q, beta), rhs, params)


def continuous_xp_densities(state, refine: int = 16):
    """Position and momentum densities with the transform taken at ``hbar = 1``.

    The momentum density is sampled ``refine`` times finer than the conjugate
    grid (zero padding); the conjugate grid alone is too coarse near zeros of
    the density, where ``rho ln rho`` is not smooth.
    """
    comps = _components(state)
    unit = [GridWaveFunction(psi.grid, psi.amps, "position", 1.0) for psi in comps]
    weights = state.weights if isinstance(state, MixedState) else [1.0]
    rho_x = mix(Mixture(tuple(zip(weights, [u.density() for u in unit]))))
    rho_p = mix(Mixture(tuple(zip(weights, [fourier_transform(zero_pad(u, refine)).density() for u in unit]))))
    return rho_x, rho_p


def verify_xp_continuous(state, alpha: float, hbar: Optional[float] = None,
                         swap: bool = False) -> BoundReport:
    """Integral entropies of the densities against ``bound_xp_continuous``.

    ``hbar`` is dropped: the momentum density comes from the transform with
    ``hbar = 1`` whatever the state carries.
    """
    pair = OrderPair(alpha)
    rho_x, rho_p = continuous_xp_densities(state)
    a_p, a_x = (pair.beta, pair.alpha) if swap else (pair.alpha, pair.beta)
    params = {"relation": "xp-cont", "alpha": pair.alpha, "beta": pair.beta, "hbar": 1.0,
              "n_dim": 1, "swap": bool(swap)}
    return make_report(ent.continuous_renyi(rho_p, a_p), ent.continuous_renyi(rho_x, a_x),
                       bound_xp_continuous(pair.alpha), params)


# -- angle / M_z -------------------------------------------------------------------


def angular_bins(dphi: float) -> int:
    """Number of bins ``K`` with ``dphi = 2 pi / K``."""
    if not dphi > 0:
        raise DomainError("angular resolution must be positive")
    k = 2 * math.pi / dphi
    if abs(k - round(k)) > 1e-9 * k or round(k) < 1:
        raise DomainError(f"dphi={dphi} does not divide 2 pi into whole bins")
    return int(round(k))


def _angle_grid_size(state, k, min_points=1024):
    need = max(min_points, 4 * state.coeffs.size, 16)
    return k * max(1, math.ceil(need / k))


def angle_distributions(state: AngularState, dphi: float):
    """``(M_z probabilities, angle-bin probabilities)`` for bins of width ``dphi``."""
    k = angular_bins(dphi)
    rho = angular_density(state, _angle_grid_size(state, k))
    return angular_momentum_probs(state), bin_probabilities(rho, 2 * math.pi / k, 0.0)


def verify_angle(state: AngularState, alpha: float, dphi: float) -> BoundReport:
    """``H_alpha(M_z) + H_beta(angle bins) >= -ln(dphi / 2 pi)``."""
    pair = OrderPair(alpha)
    pm, pphi = angle_distributions(state, dphi)
    params = {"relation": "angle", "alpha": pair.alpha, "beta": pair.beta, "dphi": float(dphi),
              "bins": angular_bins(dphi), "nonneg_only": state.nonneg_only}
    return make_report(ent.renyi_entropy(pm, pair.alpha), ent.renyi_entropy(pphi, pair.beta),
                       bound_angle(dphi), params)


def verify_angle_symmetrized(state: AngularState, s: float, dphi: float) -> BoundReport:
    pm, pphi = angle_distributions(state, dphi)
    params = {"relation": "angle-sym", "s": float(s), "dphi": float(dphi), "bins": angular_bins(dphi),
              "nonneg_only": state.nonneg_only}
    return make_report(ent.symmetrized_entropy(pm, s), ent.symmetrized_entropy(pphi, s),
                       bound_angle(dphi), params)


def verify_angle_continuous(state: AngularState, alpha: float, n_phi: Optional[int] = None) -> BoundReport:
    """``H_alpha(M_z) + integral H_beta(angle) >= ln 2 pi`` (Shannon form at ``alpha = 1``)."""
    pair = OrderPair(alpha)
    rho = angular_density(state, n_phi or _angle_grid_size(state, 1, 4096))
    params = {"relation": "angle-cont", "alpha": pair.alpha, "beta": pair.beta,
              "n_phi": rho.grid.n_points, "nonneg_only": state.nonneg_only}
    return make_report(ent.renyi_entropy(angular_momentum_probs(state), pair.alpha),
                       ent.continuous_renyi(rho, pair.beta), bound_angle_continuous(), params)


# -- N-level -----------------------------------------------------------------------


def verify_nlevel(state: NLevelState, alpha: float) -> BoundReport:
    """``H_alpha(|a~|^2) + H_beta(|a|^2) >= ln N``."""
    pair = OrderPair(alpha)
    if state.basis != "position_like":
        state = dft(state)
    rho = nlevel_probs(state)
    rho_t = nlevel_probs(dft(state))
    params = {"relation": "nlevel", "alpha": pair.alpha, "beta": pair.beta, "N": state.n}
    return make_report(ent.renyi_entropy(rho_t, pair.alpha), ent.renyi_entropy(rho, pair.beta),
                       bound_nlevel(state.n), params)
