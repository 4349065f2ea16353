import math

import numpy as np
import pytest
from scipy.stats import norm

from conftest import TEST_GRID, random_gaussian, random_hermite
from renyi_uncertainty import (
    AngularState,
    DensityGrid,
    GridSpec,
    GridWaveFunction,
    MixedState,
    Mixture,
    ValidationError,
    angular_density,
    angular_momentum_probs,
    bin_probabilities,
    fourier_transform,
    inverse_fourier_transform,
    make_gaussian,
    make_hermite_superposition,
    mix,
)
from renyi_uncertainty.states import (
    angular_amplitude,
    chirp_sum,
    density_on,
    hermite_functions,
    sample_amplitude,
    zero_pad,
)


def std_normal(grid):
    return DensityGrid(grid, norm.pdf(grid.points))


def test_grid_geometry():
    g = GridSpec(-1, 1, 16)
    assert g.spacing == 0.125
    assert g.points[0] == pytest.approx(-0.9375)
    c = GridSpec(-16, 16, 4096).conjugate()
    assert c.spacing == pytest.approx(2 * math.pi / 32)
    assert c.x_min == -c.x_max
    with pytest.raises(ValidationError):
        GridSpec(1, 1, 32)
    with pytest.raises(ValidationError):
        GridSpec(0, 1, 8)


def test_minimal_gaussian_closed_form(minimal_gaussian):
    x = minimal_gaussian.grid.points
    assert np.max(np.abs(minimal_gaussian.amps - math.pi ** -0.25 * np.exp(-x ** 2 / 2))) < 1e-13
    assert minimal_gaussian.norm() == pytest.approx(1.0, abs=1e-10)
    assert minimal_gaussian.density().variance() == pytest.approx(0.5, abs=1e-8)


def test_gaussian_tail_check():
    with pytest.raises(ValidationError):
        make_gaussian(0, 0, 3.0)
    with pytest.raises(ValidationError):
        make_gaussian(12, 0, 1.0)


def test_gaussian_momentum_band_check():
    with pytest.raises(ValidationError):
        make_gaussian(0, 400, 0.7)


def test_hermite_ground_state_is_the_minimal_gaussian(minimal_gaussian):
    h = make_hermite_superposition([1.0])
    assert np.max(np.abs(h.amps - minimal_gaussian.amps)) < 1e-14


def test_first_hermite_has_a_node():
    g = GridSpec(-16, 16, 4097)  # odd count puts a centre at x = 0
    h = make_hermite_superposition([0, 1], g)
    assert h.density().values[2048] < 1e-20


def test_hermite_normalization_and_validation():
    h = make_hermite_superposition([1 / math.sqrt(2), 1j / math.sqrt(2)])
    assert h.norm() == pytest.approx(1.0, abs=1e-10)
    with pytest.raises(ValidationError):
        make_hermite_superposition([1.0, 1.0])
    with pytest.raises(ValidationError):
        make_hermite_superposition([0.0] * 13 + [1.0])


def test_hermite_functions_are_orthonormal():
    g = TEST_GRID
    phi = hermite_functions(g.points, 10)
    gram = phi @ phi.T * g.spacing
    assert np.max(np.abs(gram - np.eye(11))) < 1e-12


def test_gaussian_transform_is_self_dual(minimal_gaussian):
    phi = fourier_transform(minimal_gaussian)
    p = phi.grid.points
    assert phi.rep == "momentum"
    assert np.max(np.abs(phi.amps - math.pi ** -0.25 * np.exp(-p ** 2 / 2))) < 1e-12
    assert phi.norm() == pytest.approx(1.0, abs=1e-10)


def test_shift_only_changes_phase():
    a = fourier_transform(make_gaussian(0, 0, 1 / math.sqrt(2)))
    b = fourier_transform(make_gaussian(2, 0, 1 / math.sqrt(2)))
    assert np.max(np.abs(np.abs(a.amps) - np.abs(b.amps))) < 1e-9


def test_hermite_functions_are_transform_eigenfunctions():
    for n in range(9):
        c = np.zeros(n + 1)
        c[n] = 1
        psi = make_hermite_superposition(c, TEST_GRID)
        phi = fourier_transform(psi)
        expected = (-1j) ** n * hermite_functions(phi.grid.points, n)[n]
        assert np.max(np.abs(phi.amps - expected)) < 1e-10


def test_hbar_scaling():
    psi = make_gaussian(0, 0, 1.0, GridSpec(-16, 16, 4096), hbar=0.5)
    phi = fourier_transform(psi)
    # momentum spread hbar / (2 sigma)
    assert phi.density().variance() == pytest.approx(0.0625, abs=1e-10)


@pytest.mark.parametrize("family", ["gaussian", "hermite"])
def test_round_trip_and_parseval(rng, family):
    for _ in range(10):
        psi = random_gaussian(rng) if family == "gaussian" else random_hermite(rng)
        phi = fourier_transform(psi)
        assert abs(phi.norm() - 1) < 1e-10
        back = inverse_fourier_transform(phi)
        assert np.max(np.abs(back.amps - psi.amps)) < 1e-10
        assert back.grid == psi.grid
        assert np.max(np.abs(fourier_transform(phi).amps - psi.amps)) < 1e-10


def test_chirp_sum_matches_direct_sum(rng):
    x = rng.standard_normal(37) + 1j * rng.standard_normal(37)
    theta = 0.0123
    direct = np.exp(1j * theta * np.outer(np.arange(50), np.arange(37))) @ x
    assert np.max(np.abs(chirp_sum(x, 50, theta) - direct)) < 1e-12


def test_off_grid_momentum_samples(minimal_gaussian):
    target = GridSpec(-3.3, 2.9, 301)
    amp = sample_amplitude(minimal_gaussian, target, "momentum")
    assert np.max(np.abs(amp - math.pi ** -0.25 * np.exp(-target.points ** 2 / 2))) < 1e-12


def test_zero_padding_refines_the_momentum_grid(minimal_gaussian):
    wide = zero_pad(minimal_gaussian, 4)
    phi = fourier_transform(wide)
    assert phi.grid.spacing == pytest.approx(fourier_transform(minimal_gaussian).grid.spacing / 4)
    assert np.max(np.abs(phi.amps - math.pi ** -0.25 * np.exp(-phi.grid.points ** 2 / 2))) < 1e-11


def test_binning_oracles():
    g = GridSpec(-10, 10, 20000)
    p = bin_probabilities(std_normal(g), 1.0)
    got = dict(zip(p.labels.tolist(), p.probs))
    for k in (-1, 0):
        # midpoint cells: error ~ h^2/24 |f'(1) - f'(0)| ~ 1e-8
        assert got[k] == pytest.approx(norm.cdf(1) - norm.cdf(0), abs=1e-7)
        assert got[k] == pytest.approx(0.341344746068543, abs=1e-7)
    assert abs(p.probs.sum() - 1) < 1e-12

    one = bin_probabilities(std_normal(g), 20.0, offset=-10)
    assert one.probs.tolist() == [1.0]
    flat = DensityGrid(GridSpec(0, 1, 16), np.ones(16))
    assert bin_probabilities(flat, 1.0).probs.tolist() == [1.0]


def test_binning_rejects_incommensurate_bins():
    g = GridSpec(-10, 10, 2000)
    with pytest.raises(ValidationError):
        bin_probabilities(std_normal(g), 0.0137)
    with pytest.raises(ValidationError):
        bin_probabilities(std_normal(g), 1.0, offset=0.0013)


def test_binning_is_refinement_invariant():
    for offset in (0.0, 0.25):
        coarse = bin_probabilities(std_normal(GridSpec(-16, 16, 4096)), 0.5, offset)
        fine = bin_probabilities(std_normal(GridSpec(-16, 16, 8192)), 0.5, offset)
        assert np.array_equal(coarse.labels, fine.labels)
        assert np.max(np.abs(coarse.probs - fine.probs)) < 1e-6


def test_density_validation():
    g = GridSpec(0, 1, 16)
    with pytest.raises(ValidationError):
        DensityGrid(g, -np.ones(16))
    with pytest.raises(ValidationError):
        DensityGrid(g, 2 * np.ones(16))


def test_mixture_oracles():
    g = GridSpec(-12.005, 12.005, 2401)  # centre 1200 sits at x = 0
    a = DensityGrid(g, norm.pdf(g.points, -3))
    b = DensityGrid(g, norm.pdf(g.points, 3))
    m = mix(Mixture(((0.5, a), (0.5, b))))
    centre = m.values[1200]
    assert centre == pytest.approx(math.exp(-4.5) / math.sqrt(2 * math.pi), rel=1e-9)
    assert centre == pytest.approx(0.00443184841193801, rel=1e-9)
    assert np.allclose(mix(Mixture(((1.0, a),))).values, a.values)
    assert np.allclose(mix(Mixture(((0.5, a), (0.5, a)))).values, a.values)


def test_mixture_validation():
    g1, g2 = GridSpec(-12, 12, 2400), GridSpec(-12, 12, 1200)
    a, b = DensityGrid(g1, norm.pdf(g1.points)), DensityGrid(g2, norm.pdf(g2.points))
    with pytest.raises(ValidationError):
        Mixture(((0.5, a), (0.5, b)))
    with pytest.raises(ValidationError):
        Mixture(((0.6, a), (0.6, a)))
    with pytest.raises(ValidationError):
        Mixture(((1.5, a), (-0.5, a)))


def test_mixed_state_densities_mix(rng):
    s1, s2 = random_gaussian(rng), random_gaussian(rng)
    mixed = MixedState(((0.3, s1), (0.7, s2)))
    target = fourier_transform(s1).grid
    got = density_on(mixed, target, "momentum").values
    want = 0.3 * fourier_transform(s1).density().values + 0.7 * fourier_transform(s2).density().values
    assert np.max(np.abs(got - want)) < 1e-12


def test_angular_densities():
    e = angular_density(AngularState.eigenstate(5), 64)
    assert np.allclose(e.values, 1 / (2 * math.pi), atol=1e-14)
    s = AngularState([1 / math.sqrt(2), 1 / math.sqrt(2)], m_min=0)
    d = angular_density(s, 128)
    assert np.allclose(d.values, (1 + np.cos(d.grid.points)) / (2 * math.pi), atol=1e-14)
    assert abs(angular_amplitude(s, [math.pi])[0]) < 1e-15
    assert np.sum(d.values) * d.grid.spacing == pytest.approx(1.0, abs=1e-10)
    with pytest.raises(ValidationError):
        angular_density(s, 7)


def test_angular_momentum_probabilities(rng):
    assert angular_momentum_probs(AngularState.eigenstate(3)).probs.tolist() == [1.0]
    s = AngularState([1 / math.sqrt(2), 1 / math.sqrt(2)], m_min=0)
    assert np.allclose(angular_momentum_probs(s).probs, [0.5, 0.5])
    c = rng.standard_normal(8) + 1j * rng.standard_normal(8)
    r = angular_momentum_probs(AngularState(c / np.linalg.norm(c), m_min=-3))
    assert abs(r.probs.sum() - 1) < 1e-12
    assert r.labels.tolist() == list(range(-3, 5))


def test_angular_state_validation():
    with pytest.raises(ValidationError):
        AngularState([1.0, 1.0])
    with pytest.raises(ValidationError):
        AngularState([1.0], m_min=-1, nonneg_only=True)


def test_wavefunction_validation(minimal_gaussian):
    with pytest.raises(ValidationError):
        GridWaveFunction(minimal_gaussian.grid, 2 * minimal_gaussian.amps)
    with pytest.raises(ValidationError):
        inverse_fourier_transform(minimal_gaussian)
