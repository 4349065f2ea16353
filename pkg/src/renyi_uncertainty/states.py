"""Grid-sampled wave functions, densities, mixtures and binned distributions.

Grid convention: a :class:`GridSpec` ``(x_min, x_max, n_points)`` is divided
into ``n_points`` cells ``[x_min + j*h, x_min + (j+1)*h)`` of width
``h = (x_max - x_min)/n_points``; every sample sits at a cell centre. Integrals
are midpoint sums (sample value times ``h``), and a bin of width ``delta`` is
an exact union of cells whenever ``delta`` and the bin offset are commensurate
with the grid.

The position/momentum transform uses the physical kernel
``exp(-i p x / hbar) / sqrt(2 pi hbar)``. On the conjugate grid
(spacing ``2 pi hbar / (n h)``) it is an FFT with phase corrections, which is
exactly unitary; on any other uniform grid it is evaluated with a chirp-z
transform of the same Riemann sum.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .entropy import NORM_TOL, ProbVec
from .errors import ValidationError

REPS = ("position", "momentum", "angle")
_ALIGN_TOL = 1e-9


@dataclass(frozen=True)
class GridSpec:
    """Uniform cell-centred grid on ``[x_min, x_max)``."""

    x_min: float
    x_max: float
    n_points: int

    def __post_init__(self):
        object.__setattr__(self, "x_min", float(self.x_min))
        object.__setattr__(self, "x_max", float(self.x_max))
        if int(self.n_points) != self.n_points:
            raise ValidationError("n_points must be an integer")
        object.__setattr__(self, "n_points", int(self.n_points))
        if not self.x_max > self.x_min:
            raise ValidationError(f"empty grid [{self.x_min}, {self.x_max})")
        if self.n_points < 16:
            raise ValidationError(f"grid needs at least 16 points, got {self.n_points}")

    @property
    def spacing(self) -> float:
        return (self.x_max - self.x_min) / self.n_points

    @property
    def width(self) -> float:
        return self.x_max - self.x_min

    @property
    def points(self) -> np.ndarray:
        """Cell centres."""
        return self.x_min + (np.arange(self.n_points) + 0.5) * self.spacing

    def conjugate(self, hbar: float = 1.0) -> "GridSpec":
        """Symmetric conjugate grid with spacing ``2 pi hbar / width``."""
        half = math.pi * hbar * self.n_points / self.width
        return GridSpec(-half, half, self.n_points)


DEFAULT_GRID = GridSpec(-16.0, 16.0, 4096)


def _is_multiple(value, unit):
    r = value / unit
    return abs(r - round(r)) <= _ALIGN_TOL * max(1.0, abs(r)), int(round(r))


@dataclass(frozen=True)
class DensityGrid:
    """Nonnegative density samples on a grid, normalized by the midpoint rule."""

    grid: GridSpec
    values: np.ndarray
    rep: str = "position"

    def __post_init__(self):
        if self.rep not in REPS:
            raise ValidationError(f"unknown representation {self.rep!r}")
        v = np.array(self.values, dtype=float).ravel()
        if v.size != self.grid.n_points:
            raise ValidationError("density length does not match grid")
        if np.any(v < 0) or not np.all(np.isfinite(v)):
            raise ValidationError("density must be finite and nonnegative")
        total = v.sum() * self.grid.spacing
        if abs(total - 1.0) > NORM_TOL:
            raise ValidationError(f"density integrates to {total!r}, not 1")
        v = v / total
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    def power_integral(self, order: float) -> float:
        """Midpoint estimate of ``int rho**order``."""
        return float(np.sum(self.values ** order) * self.grid.spacing)

    def norm(self, order: float) -> float:
        """``(int rho**order)**(1/order)``."""
        return self.power_integral(order) ** (1.0 / order)

    def mean(self) -> float:
        return float(np.sum(self.grid.points * self.values) * self.grid.spacing)

    def variance(self) -> float:
        m = self.mean()
        return float(np.sum((self.grid.points - m) ** 2 * self.values) * self.grid.spacing)


@dataclass(frozen=True)
class GridWaveFunction:
    """Complex amplitudes on a grid in the position or momentum representation.

    ``conjugate`` records the grid of the other representation when the
    function came out of :func:`fourier_transform`, so the inverse lands on
    the original samples.
    """

    grid: GridSpec
    amps: np.ndarray
    rep: str = "position"
    hbar: float = 1.0
    conjugate: Optional[GridSpec] = field(default=None, compare=False)

    def __post_init__(self):
        if self.rep not in ("position", "momentum"):
            raise ValidationError(f"wave functions live in position or momentum rep, not {self.rep!r}")
        if not self.hbar > 0:
            raise ValidationError("hbar must be positive")
        a = np.array(self.amps, dtype=complex).ravel()
        if a.size != self.grid.n_points:
            raise ValidationError("amplitude length does not match grid")
        norm = np.sum(np.abs(a) ** 2) * self.grid.spacing
        if abs(norm - 1.0) > NORM_TOL:
            raise ValidationError(f"wave function norm is {norm!r}, not 1")
        a = a / math.sqrt(norm)
        a.setflags(write=False)
        object.__setattr__(self, "amps", a)
        object.__setattr__(self, "hbar", float(self.hbar))

    def density(self) -> DensityGrid:
        return DensityGrid(self.grid, np.abs(self.amps) ** 2, self.rep)

    def norm(self) -> float:
        return float(np.sum(np.abs(self.amps) ** 2) * self.grid.spacing)


@dataclass(frozen=True)
class Mixture:
    """Convex combination of densities sharing one grid and representation."""

    components: tuple

    def __post_init__(self):
        comps = tuple((float(w), d) for w, d in self.components)
        if not comps:
            raise ValidationError("mixture needs at least one component")
        weights = np.array([w for w, _ in comps])
        if np.any(weights < 0) or np.any(weights > 1):
            raise ValidationError("mixture weights must lie in [0, 1]")
        if abs(weights.sum() - 1.0) > 1e-12:
            raise ValidationError(f"mixture weights sum to {weights.sum()!r}")
        g, rep = comps[0][1].grid, comps[0][1].rep
        for _, d in comps:
            if d.grid != g or d.rep != rep:
                raise ValidationError("mixture components must share grid and representation")
        object.__setattr__(self, "components", comps)


@dataclass(frozen=True)
class MixedState:
    """Mixed state given as weighted pure wave functions (position rep).

    Densities of a mixed state are the weighted sums of component densities in
    each representation; amplitudes are never added.
    """

    components: tuple

    def __post_init__(self):
        comps = tuple((float(w), psi) for w, psi in self.components)
        if not comps:
            raise ValidationError("mixed state needs at least one component")
        weights = np.array([w for w, _ in comps])
        if np.any(weights < 0) or abs(weights.sum() - 1.0) > 1e-12:
            raise ValidationError("weights must be nonnegative and sum to 1")
        first = comps[0][1]
        for _, psi in comps:
            if psi.rep != "position":
                raise ValidationError("mixed-state components must be in position rep")
            if psi.grid != first.grid or psi.hbar != first.hbar:
                raise ValidationError("mixed-state components must share grid and hbar")
        object.__setattr__(self, "components", comps)

    @property
    def grid(self):
        return self.components[0][1].grid

    @property
    def hbar(self):
        return self.components[0][1].hbar

    @property
    def weights(self):
        return [w for w, _ in self.components]

    @property
    def states(self):
        return [psi for _, psi in self.components]


@dataclass(frozen=True)
class AngularState:
    """Fourier-series state ``psi(phi) = sum_m c_m exp(i m phi) / sqrt(2 pi)``.

    ``coeffs[i]`` multiplies ``m = m_min + i``. ``nonneg_only`` restricts the
    support to ``m >= 0`` (phase / occupation-number setting).
    """

    coeffs: np.ndarray
    m_min: int = 0
    nonneg_only: bool = False

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=complex).ravel()
        if c.size == 0:
            raise ValidationError("angular state needs at least one coefficient")
        norm = np.sum(np.abs(c) ** 2)
        if abs(norm - 1.0) > 1e-10:
            raise ValidationError(f"coefficients have squared norm {norm!r}, not 1")
        if int(self.m_min) != self.m_min:
            raise ValidationError("m_min must be an integer")
        if self.nonneg_only and self.m_min < 0:
            raise ValidationError("nonneg_only states need m_min >= 0")
        c = c / math.sqrt(norm)
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)
        object.__setattr__(self, "m_min", int(self.m_min))

    @property
    def m_values(self) -> np.ndarray:
        return self.m_min + np.arange(self.coeffs.size)

    @property
    def m_max(self) -> int:
        return self.m_min + self.coeffs.size - 1

    @classmethod
    def eigenstate(cls, m: int, nonneg_only: bool = False) -> "AngularState":
        return cls(np.array([1.0 + 0j]), m_min=m, nonneg_only=nonneg_only)


# -- constructors ------------------------------------------------------------


def _check_band(grid, hbar, p_lo, p_hi):
    """Momentum content must fit inside the grid's Nyquist band."""
    nyq = math.pi * hbar / grid.spacing
    if p_lo < -nyq or p_hi > nyq:
        raise ValidationError(
            f"momentum content [{p_lo:.3g}, {p_hi:.3g}] exceeds the grid band +-{nyq:.3g}"
        )


def make_gaussian(x0: float, p0: float, sigma: float, grid: GridSpec = DEFAULT_GRID,
                  hbar: float = 1.0) -> GridWaveFunction:
    """Gaussian packet with position spread ``sigma`` centred at ``(x0, p0)``.

    The grid must reach at least ``8 sigma`` beyond ``x0`` on both sides, which
    keeps the probability outside it below ``1e-12``.
    """
    if not sigma > 0:
        raise ValidationError("sigma must be positive")
    if grid.x_min > x0 - 8 * sigma or grid.x_max < x0 + 8 * sigma:
        raise ValidationError(
            f"grid [{grid.x_min}, {grid.x_max}) too narrow for sigma={sigma} at x0={x0}: "
            "tail mass would exceed 1e-12"
        )
    sigma_p = hbar / (2 * sigma)
    _check_band(grid, hbar, p0 - 8 * sigma_p, p0 + 8 * sigma_p)
    x = grid.points
    amps = (2 * math.pi * sigma ** 2) ** -0.25 * np.exp(
        -((x - x0) ** 2) / (4 * sigma ** 2) + 1j * p0 * x / hbar
    )
    return GridWaveFunction(grid, amps, "position", hbar)


def hermite_functions(xi: np.ndarray, degree: int) -> np.ndarray:
    """Orthonormal Hermite functions ``h_0..h_degree`` at ``xi`` (rows).

    Three-term recurrence on the normalized functions, stable for large
    arguments where ``H_n`` itself would overflow.
    """
    xi = np.asarray(xi, dtype=float)
    out = np.empty((degree + 1, xi.size))
    out[0] = math.pi ** -0.25 * np.exp(-0.5 * xi ** 2)
    if degree >= 1:
        out[1] = math.sqrt(2.0) * xi * out[0]
    for n in range(1, degree):
        out[n + 1] = math.sqrt(2.0 / (n + 1)) * xi * out[n] - math.sqrt(n / (n + 1)) * out[n - 1]
    return out


MAX_HERMITE_DEGREE = 12


def make_hermite_superposition(coeffs: Sequence[complex], grid: GridSpec = DEFAULT_GRID,
                               hbar: float = 1.0, sigma: Optional[float] = None) -> GridWaveFunction:
    """Superposition ``sum_n c_n phi_n`` of Hermite functions.

    ``phi_n`` are the oscillator eigenfunctions whose ground state has position
    spread ``sigma`` (default ``sqrt(hbar/2)``, the minimum-uncertainty width).
    """
    c = np.asarray(coeffs, dtype=complex).ravel()
    if c.size == 0 or c.size - 1 > MAX_HERMITE_DEGREE:
        raise ValidationError(f"Hermite degree must be in 0..{MAX_HERMITE_DEGREE}")
    if abs(np.sum(np.abs(c) ** 2) - 1.0) > 1e-10:
        raise ValidationError("Hermite coefficients must have unit norm")
    if sigma is None:
        sigma = math.sqrt(hbar / 2)
    if not sigma > 0:
        raise ValidationError("sigma must be positive")
    scale = math.sqrt(2.0) * sigma
    degree = c.size - 1
    reach = max(8 / math.sqrt(2.0), math.sqrt(2 * degree + 1) + 4.5)
    if grid.x_min > -reach * scale or grid.x_max < reach * scale:
        raise ValidationError(f"grid too narrow for Hermite degree {degree} at sigma={sigma}")
    _check_band(grid, hbar, -reach * hbar / scale, reach * hbar / scale)
    basis = hermite_functions(grid.points / scale, degree) / math.sqrt(scale)
    return GridWaveFunction(grid, c @ basis, "position", hbar)


# -- transforms ----------------------------------------------------------------


def fourier_transform(psi: GridWaveFunction) -> GridWaveFunction:
    """Position to momentum on the conjugate grid; momentum input is inverted.

    ``psi~(p) = int exp(-i p x / hbar) psi(x) dx / sqrt(2 pi hbar)`` evaluated
    at the conjugate-grid centres.
    """
    if psi.rep == "momentum":
        return inverse_fourier_transform(psi)
    g, hbar = psi.grid, psi.hbar
    pg = g.conjugate(hbar)
    h, dp, n = g.spacing, pg.spacing, g.n_points
    x0, p0 = g.points[0], pg.points[0]
    j = np.arange(n)
    pre = np.exp(-1j * p0 * j * h / hbar)
    post = np.exp(-1j * pg.points * x0 / hbar)
    amps = h / math.sqrt(2 * math.pi * hbar) * post * np.fft.fft(pre * psi.amps)
    return GridWaveFunction(pg, amps, "momentum", hbar, conjugate=g)


def inverse_fourier_transform(phi: GridWaveFunction) -> GridWaveFunction:
    """Momentum to position; lands on ``phi.conjugate`` when known."""
    if phi.rep != "momentum":
        raise ValidationError("inverse transform expects a momentum-rep wave function")
    pg, hbar, n = phi.grid, phi.hbar, phi.grid.n_points
    h = 2 * math.pi * hbar / pg.width
    xg = phi.conjugate
    if xg is None:
        xg = GridSpec(-0.5 * n * h, 0.5 * n * h, n)
    elif xg.n_points != n or abs(xg.spacing - h) > 1e-12 * h:
        raise ValidationError("recorded conjugate grid is inconsistent with the momentum grid")
    dp = pg.spacing
    x0 = xg.points[0]
    k = np.arange(n)
    pre = np.exp(1j * k * dp * x0 / hbar)
    post = np.exp(1j * pg.points[0] * xg.points / hbar)
    amps = dp / math.sqrt(2 * math.pi * hbar) * post * (n * np.fft.ifft(pre * phi.amps))
    return GridWaveFunction(xg, amps, "position", hbar, conjugate=pg)


def chirp_sum(x: np.ndarray, m: int, theta: float) -> np.ndarray:
    """``sum_n x_n exp(i theta n k)`` for ``k = 0..m-1`` (Bluestein's algorithm).

    Chirp phases are formed from ``theta`` itself rather than from powers of
    ``exp(i theta)``, which keeps the phase error at ``eps * theta * k**2``.
    """
    x = np.asarray(x, dtype=complex)
    n = x.size
    size = 1 << (n + m - 2).bit_length()
    kk = np.arange(max(n, m), dtype=float)
    chirp = np.exp(0.5j * theta * kk * kk)
    a = np.zeros(size, dtype=complex)
    a[:n] = x * chirp[:n]
    b = np.zeros(size, dtype=complex)
    b[:m] = np.conj(chirp[:m])
    if n > 1:
        b[size - n + 1:] = np.conj(chirp[1:n][::-1])
    conv = np.fft.ifft(np.fft.fft(a) * np.fft.fft(b))[:m]
    return chirp[:m] * conv


def _fourier_sum(values, src: GridSpec, dst: GridSpec, sign: int, hbar: float):
    """``(h_src/sqrt(2 pi hbar)) sum_j exp(sign i t s_j/hbar) f_j`` at every target centre t."""
    hs, ht = src.spacing, dst.spacing
    s0, t0 = src.points[0], dst.points[0]
    j = np.arange(src.n_points)
    x = values * np.exp(sign * 1j * t0 * j * hs / hbar)
    out = chirp_sum(x, dst.n_points, sign * ht * hs / hbar)
    return hs / math.sqrt(2 * math.pi * hbar) * np.exp(sign * 1j * dst.points * s0 / hbar) * out


def zero_pad(psi: GridWaveFunction, factor: int) -> GridWaveFunction:
    """Same samples on a grid ``factor`` times wider (zeros outside).

    The transform of the padded function samples the same momentum band
    ``factor`` times more densely.
    """
    if psi.rep != "position" or int(factor) != factor or factor < 1:
        raise ValidationError("zero padding needs a position-rep function and an integer factor")
    g, factor = psi.grid, int(factor)
    extra = (factor - 1) * g.n_points
    left = extra // 2
    h = g.spacing
    wide = GridSpec(g.x_min - left * h, g.x_max + (extra - left) * h, factor * g.n_points)
    amps = np.zeros(wide.n_points, dtype=complex)
    amps[left:left + g.n_points] = psi.amps
    return GridWaveFunction(wide, amps, "position", psi.hbar)


def sample_amplitude(psi: GridWaveFunction, target: GridSpec, rep: str) -> np.ndarray:
    """Amplitude of ``psi`` in representation ``rep`` at the centres of ``target``.

    Cross-representation samples are Riemann sums of the transform integral;
    same-representation resampling goes through the conjugate grid, i.e. it
    is band-limited trigonometric interpolation. Targets should lie inside the
    band (momentum) or the original extent (position) of the source grid.
    """
    if rep not in ("position", "momentum"):
        raise ValidationError(f"cannot sample amplitude in rep {rep!r}")
    src = psi if psi.rep != rep else fourier_transform(psi)
    sign = -1 if src.rep == "position" else 1
    return _fourier_sum(src.amps, src.grid, target, sign, psi.hbar)


def density_on(state, target: GridSpec, rep: str) -> DensityGrid:
    """Density of a pure or mixed state in ``rep`` sampled on ``target``.

    Mixed states are mixed at the density level.
    """
    if isinstance(state, MixedState):
        parts = [(w, density_on(psi, target, rep)) for w, psi in state.components]
        return mix(Mixture(tuple(parts)))
    if state.rep == rep and state.grid == target:
        return state.density()
    return DensityGrid(target, np.abs(sample_amplitude(state, target, rep)) ** 2, rep)


def support(rho: DensityGrid, mass: float = 1e-18):
    """Smallest ``[lo, hi)`` of whole cells outside which each tail carries < ``mass``."""
    cells = rho.values * rho.grid.spacing
    c = np.cumsum(cells)
    lo = int(np.searchsorted(c, mass, side="right"))
    tail = np.cumsum(cells[::-1])
    hi = rho.grid.n_points - int(np.searchsorted(tail, mass, side="right"))
    lo, hi = max(lo, 0), max(hi, lo + 1)
    h = rho.grid.spacing
    return rho.grid.x_min + lo * h, rho.grid.x_min + hi * h


def aligned_grid(lo: float, hi: float, delta: float, offset: float = 0.0,
                 max_cell: Optional[float] = None) -> GridSpec:
    """Grid whose cells tile the bins ``[offset + k delta, offset + (k+1) delta)`` covering ``[lo, hi]``."""
    if not delta > 0:
        raise ValidationError("bin width must be positive")
    k_lo = math.floor((lo - offset) / delta)
    k_hi = math.ceil((hi - offset) / delta)
    k_hi = max(k_hi, k_lo + 1)
    per_bin = 1 if max_cell is None else max(1, math.ceil(delta / max_cell - 1e-12))
    nbins = k_hi - k_lo
    per_bin = max(per_bin, math.ceil(16 / nbins))
    return GridSpec(offset + k_lo * delta, offset + k_hi * delta, nbins * per_bin)


# -- densities, binning and mixing --------------------------------------------


def bin_probabilities(rho: DensityGrid, delta: float, offset: float = 0.0) -> ProbVec:
    """Probabilities of the bins ``[offset + k delta, offset + (k+1) delta)``.

    ``delta`` must be an integer multiple of the grid spacing and ``offset``
    must sit on a cell boundary; the returned labels are the bin indices ``k``.
    """
    g = rho.grid
    h = g.spacing
    if not delta > 0:
        raise ValidationError("bin width must be positive")
    ok, r = _is_multiple(delta, h)
    if not ok or r < 1:
        raise ValidationError(f"bin width {delta} is not a multiple of the grid spacing {h}")
    ok, s = _is_multiple(g.x_min - offset, h)
    if not ok:
        raise ValidationError(f"bin offset {offset} is not aligned with the grid cells")
    k = (s + np.arange(g.n_points)) // r
    k0 = int(k[0])
    probs = np.bincount(k - k0, weights=rho.values * h)
    return ProbVec(probs, labels=np.arange(k0, k0 + probs.size))


def mix(components: Mixture) -> DensityGrid:
    """Pointwise weighted sum of the component densities."""
    if not isinstance(components, Mixture):
        components = Mixture(tuple(components))
    g, rep = components.components[0][1].grid, components.components[0][1].rep
    values = sum(w * d.values for w, d in components.components)
    return DensityGrid(g, values, rep)


def angular_amplitude(state: AngularState, phi: np.ndarray) -> np.ndarray:
    phi = np.asarray(phi, dtype=float)
    return np.exp(1j * np.outer(phi, state.m_values)) @ state.coeffs / math.sqrt(2 * math.pi)


def angular_density(state: AngularState, n_phi: int) -> DensityGrid:
    """``|psi(phi)|^2`` on ``n_phi`` cells covering ``[0, 2 pi)``."""
    span = state.coeffs.size
    if n_phi < 4 * span:
        raise ValidationError(f"n_phi={n_phi} undersamples {span} Fourier modes (need >= {4 * span})")
    grid = GridSpec(0.0, 2 * math.pi, n_phi)
    return DensityGrid(grid, np.abs(angular_amplitude(state, grid.points)) ** 2, "angle")


def angular_momentum_probs(state: AngularState) -> ProbVec:
    """``|c_m|^2`` labelled by ``m``."""
    return ProbVec(np.abs(state.coeffs) ** 2, labels=state.m_values)
