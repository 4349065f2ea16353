import io
import math

import pytest

from renyi_uncertainty import AnomalyError, FamilySpec, ValidationError, minimize_gap, scan_gap
from renyi_uncertainty import sharpness
from renyi_uncertainty.sharpness import evaluate_gap, param_names, sphere_point


def gaussian_spec(gamma_over_pi, **kw):
    d = math.sqrt(gamma_over_pi * math.pi)
    return FamilySpec("gaussian_width", ((0.3, 3.0),), alpha=1.0, dx=d, dp=d, **kw)


def test_sphere_points_are_unit_vectors():
    for angles in ([], [0.3], [1.0, 2.0, 0.5]):
        v = sphere_point(angles)
        assert len(v) == len(angles) + 1
        assert sum(v * v) == pytest.approx(1.0, abs=1e-15)


def test_family_validation():
    with pytest.raises(ValidationError):
        FamilySpec("banana", ((0.3, 3.0),))
    with pytest.raises(ValidationError):
        FamilySpec("hermite_coeffs", ((0.3, 3.0),), degree=2)
    with pytest.raises(ValidationError):
        FamilySpec("gaussian_width", ((0.0, 3.0),))
    with pytest.raises(ValidationError):
        FamilySpec("gaussian_width", ((3.0, 1.0),))


def test_auto_grid_covers_the_widest_member():
    spec = gaussian_spec(1.0)
    assert spec.grid.x_max >= 8 * 3.0
    evaluate_gap(spec, (3.0,))


def test_scan_is_in_lattice_order():
    r = scan_gap(gaussian_spec(1.0), 5)
    assert [p[0] for p, _ in r.trace] == pytest.approx([0.3, 0.975, 1.65, 2.325, 3.0])
    assert r.best_gap == min(g for _, g in r.trace)


def test_sharper_for_smaller_cells():
    fine = scan_gap(gaussian_spec(0.1), 41)
    coarse = scan_gap(gaussian_spec(1.0), 41)
    assert 0 < fine.best_gap < coarse.best_gap


def test_minimize_is_seeded_and_beats_lattice():
    spec = gaussian_spec(1.0)
    a = minimize_gap(spec, seed=7, budget=80)
    b = minimize_gap(spec, seed=7, budget=80)
    assert a.to_json() == b.to_json()
    assert len(a.trace) <= 80
    assert a.best_gap <= scan_gap(spec, 11).best_gap
    # optimum of the Gaussian family is the minimum-uncertainty width
    assert a.best_params[0] == pytest.approx(1 / math.sqrt(2), abs=0.05)


def test_budget_floor():
    with pytest.raises(ValidationError):
        minimize_gap(gaussian_spec(1.0), 0, 10)


def test_hermite_ground_state_family_matches_gaussian():
    g = evaluate_gap(gaussian_spec(1.0), (0.9,))
    h = evaluate_gap(FamilySpec("hermite_coeffs", ((0.3, 3.0),), dx=math.sqrt(math.pi), dp=math.sqrt(math.pi)), (0.9,))
    assert h == pytest.approx(g, abs=1e-12)


def test_hermite_family_search():
    spec = FamilySpec("hermite_coeffs", ((0.5, 1.0), (0.0, math.pi), (0.0, math.pi)), degree=2,
                      dx=math.sqrt(math.pi), dp=math.sqrt(math.pi))
    r = minimize_gap(spec, seed=3, budget=60)
    assert r.best_gap > 0
    assert param_names(spec) == ["sigma", "theta1", "theta2"]


def test_trace_csv():
    r = scan_gap(gaussian_spec(1.0), 3)
    buf = io.StringIO()
    r.write_trace_csv(buf, ["sigma"])
    lines = buf.getvalue().split("\n")
    assert lines[0] == "sigma,gap"
    assert len([l for l in lines if l]) == 4


def test_negative_gap_aborts(monkeypatch):
    class Fake:
        gap = -1e-6

        def to_dict(self):
            return {"gap": self.gap}

    monkeypatch.setattr(sharpness, "verify_xp", lambda *a, **k: Fake())
    with pytest.raises(AnomalyError) as info:
        scan_gap(gaussian_spec(1.0), 3)
    assert info.value.diagnostics["params"] == [0.3]
