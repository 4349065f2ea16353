"""Numerical probes of how tight the binned x-p bound is.

Gaps are always produced by :func:`~renyi_uncertainty.bounds.verify_xp`; the
search only chooses which state to hand it. Two state families exist:

``gaussian_width``
    centred Gaussian, one parameter ``sigma``.
``hermite_coeffs``
    real superposition of Hermite functions up to ``degree``; parameters are
    the ground-state width ``sigma`` followed by ``degree`` hyperspherical
    angles, so every point of the box is a normalized state.
"""
from __future__ import annotations

import csv
import itertools
import json
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np
from scipy.optimize import minimize

from .bounds import TOL, verify_xp
from .errors import AnomalyError, ValidationError
from .states import GridSpec, MAX_HERMITE_DEGREE, make_gaussian, make_hermite_superposition

KINDS = ("gaussian_width", "hermite_coeffs")


@dataclass(frozen=True)
class FamilySpec:
    kind: str
    ranges: tuple
    alpha: float = 1.0
    dx: float = 1.0
    dp: float = 1.0
    hbar: float = 1.0
    offset_x: float = 0.0
    offset_p: float = 0.0
    degree: int = 0
    grid: Optional[GridSpec] = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValidationError(f"unknown family {self.kind!r}; expected one of {KINDS}")
        ranges = tuple((float(lo), float(hi)) for lo, hi in self.ranges)
        object.__setattr__(self, "ranges", ranges)
        if self.kind == "gaussian_width" and self.degree != 0:
            raise ValidationError("the Gaussian family has no degree")
        if not 0 <= self.degree <= MAX_HERMITE_DEGREE:
            raise ValidationError(f"Hermite degree must be in 0..{MAX_HERMITE_DEGREE}")
        expected = 1 + (self.degree if self.kind == "hermite_coeffs" else 0)
        if len(ranges) != expected:
            raise ValidationError(f"{self.kind} with degree {self.degree} needs {expected} ranges, got {len(ranges)}")
        for lo, hi in ranges:
            if not hi >= lo:
                raise ValidationError(f"empty range ({lo}, {hi})")
        if not ranges[0][0] > 0:
            raise ValidationError("sigma range must be positive")
        if self.grid is None:
            object.__setattr__(self, "grid", _auto_grid(ranges[0][1], self.degree, self.hbar))

    @property
    def n_params(self) -> int:
        return len(self.ranges)

    def to_dict(self) -> dict:
        g = self.grid
        return {
            "kind": self.kind, "ranges": [list(r) for r in self.ranges], "alpha": self.alpha,
            "dx": self.dx, "dp": self.dp, "hbar": self.hbar, "offset_x": self.offset_x,
            "offset_p": self.offset_p, "degree": self.degree,
            "grid": {"x_min": g.x_min, "x_max": g.x_max, "n_points": g.n_points},
        }


def _auto_grid(sigma_max, degree, hbar, cells_per_unit=64):
    reach = max(8.0, math.sqrt(2.0) * (math.sqrt(2 * degree + 1) + 4.5))
    half = max(16.0, math.ceil(reach * sigma_max + 1.0))
    n = 1 << math.ceil(math.log2(2 * half * cells_per_unit))
    return GridSpec(-half, half, n)


def sphere_point(angles: Sequence[float]) -> np.ndarray:
    """Unit vector from hyperspherical angles (length ``len(angles) + 1``)."""
    c = np.empty(len(angles) + 1)
    prod = 1.0
    for i, a in enumerate(angles):
        c[i] = prod * math.cos(a)
        prod *= math.sin(a)
    c[-1] = prod
    return c


def family_state(spec: FamilySpec, params: Sequence[float]):
    sigma = float(params[0])
    if spec.kind == "gaussian_width":
        return make_gaussian(0.0, 0.0, sigma, spec.grid, spec.hbar)
    return make_hermite_superposition(sphere_point(params[1:]), spec.grid, spec.hbar, sigma=sigma)


@dataclass
class GapResult:
    best_params: tuple
    best_gap: float
    trace: list = field(default_factory=list)
    seed: Optional[int] = None

    def to_dict(self) -> dict:
        return {
            "best_params": [float(v) for v in self.best_params],
            "best_gap": float(f"{self.best_gap:.15g}"),
            "seed": self.seed,
            "evaluations": len(self.trace),
            "trace": [{"params": [float(f"{v:.15g}") for v in p], "gap": float(f"{g:.15g}")}
                      for p, g in self.trace],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def write_trace_csv(self, fh, names: Optional[Sequence[str]] = None):
        """Stream the trace as CSV rows ``params..., gap``."""
        n = len(self.trace[0][0]) if self.trace else len(self.best_params)
        names = list(names) if names else [f"p{i}" for i in range(n)]
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(names + ["gap"])
        for p, g in self.trace:
            w.writerow([f"{v:.15g}" for v in p] + [f"{g:.15g}"])


def param_names(spec: FamilySpec):
    return ["sigma"] + [f"theta{i}" for i in range(1, spec.n_params)]


def evaluate_gap(spec: FamilySpec, params: Sequence[float]) -> float:
    """Gap of the binned relation at one family member; aborts on an anomaly."""
    state = family_state(spec, params)
    report = verify_xp(state, spec.alpha, spec.dx, spec.dp, spec.offset_x, spec.offset_p)
    if report.gap < -TOL:
        raise AnomalyError(
            f"negative gap {report.gap:.3e} at {list(params)}: implementation bug, not a counterexample",
            {"family": spec.to_dict(), "params": [float(v) for v in params], "report": report.to_dict()},
        )
    return report.gap


def _lattice(spec, grid_points):
    axes = [np.linspace(lo, hi, grid_points) if hi > lo else np.array([lo]) for lo, hi in spec.ranges]
    return [tuple(float(v) for v in p) for p in itertools.product(*axes)]


def _best(trace):
    i = min(range(len(trace)), key=lambda j: trace[j][1])
    return trace[i]


def scan_gap(spec: FamilySpec, grid_points: int) -> GapResult:
    """Gap on a regular lattice over the parameter box, in lattice order."""
    if int(grid_points) != grid_points or grid_points < 1:
        raise ValidationError("grid_points must be a positive integer")
    trace = [(p, evaluate_gap(spec, p)) for p in _lattice(spec, int(grid_points))]
    p, g = _best(trace)
    return GapResult(p, g, trace)


class _BudgetExhausted(Exception):
    pass


def minimize_gap(spec: FamilySpec, seed: int, budget: int) -> GapResult:
    """Seeded derivative-free minimization of the gap over the family.

    A quarter of the budget goes to a lattice (one axis) or to seeded random
    points (several axes); the rest runs bounded Nelder-Mead from the best
    points found, restarting until the budget is spent.
    """
    if int(budget) != budget or budget < 50:
        raise ValidationError("budget must be an integer >= 50")
    budget = int(budget)
    rng = np.random.default_rng(seed)
    lo = np.array([r[0] for r in spec.ranges])
    hi = np.array([r[1] for r in spec.ranges])
    free = hi > lo
    trace = []
    invalid = 0

    def f(z):
        if len(trace) + invalid >= budget:
            raise _BudgetExhausted
        p = tuple(float(v) for v in np.where(free, np.clip(z, lo, hi), lo))
        return _record(p)

    def _record(p):
        nonlocal invalid
        try:
            g = evaluate_gap(spec, p)
        except ValidationError:
            invalid += 1
            return math.inf
        trace.append((p, g))
        return g

    n_init = max(5, budget // 4)
    if free.sum() <= 1:
        starts = _lattice(spec, n_init) if free.any() else _lattice(spec, 1)
    else:
        starts = [tuple(lo + (hi - lo) * rng.random(lo.size)) for _ in range(n_init)]
    for p in starts:
        if len(trace) + invalid >= budget:
            break
        _record(tuple(float(v) for v in p))

    if free.any():
        ranked = sorted(trace, key=lambda t: t[1])
        queue = [np.array(p) for p, _ in ranked]
        width = np.where(free, hi - lo, 1.0)
        try:
            while len(trace) + invalid < budget:
                if queue:
                    x0 = queue.pop(0)
                else:
                    x0 = np.array(_best(trace)[0]) + 0.05 * width * rng.standard_normal(lo.size)
                x0 = np.clip(x0, lo, hi)
                bounds = [(a, b) if b > a else (None, None) for a, b in zip(lo, hi)]
                minimize(f, x0, method="Nelder-Mead", bounds=bounds,
                         options={"maxfev": budget, "xatol": 1e-10, "fatol": 1e-15,
                                  "initial_simplex": _simplex(x0, lo, hi, free, rng)})
        except _BudgetExhausted:
            pass

    if not trace:
        raise ValidationError("no valid family member was evaluated within the budget")
    p, g = _best(trace)
    return GapResult(p, g, trace, seed)


def _simplex(x0, lo, hi, free, rng):
    """Initial simplex with seeded step lengths (5-15% of each range)."""
    pts = [x0]
    for i in range(x0.size):
        x = x0.copy()
        if free[i]:
            step = (hi[i] - lo[i]) * (0.05 + 0.1 * rng.random())
            x[i] = x[i] + step if x[i] + step <= hi[i] else x[i] - step
        else:
            x[i] = x[i] + 1.0
        pts.append(x)
    return np.array(pts)
