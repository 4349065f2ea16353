"""
How tight is the binned bound?
==============================

Scanning Gaussian widths shows the smallest gap for a given cell area
``gamma = dx dp``. Finer cells bring the entropy sum closer to the bound.
A seeded Nelder-Mead search refines the lattice minimum.
"""

import math

from renyi_uncertainty import FamilySpec, minimize_gap, scan_gap

for gamma_over_pi in (0.1, 0.3, 1.0):
    d = math.sqrt(gamma_over_pi * math.pi)
    spec = FamilySpec("gaussian_width", ((0.3, 3.0),), alpha=1.0, dx=d, dp=d)
    lattice = scan_gap(spec, 101)
    best = minimize_gap(spec, seed=42, budget=200)
    print(f"gamma/pi={gamma_over_pi:<4} scan min {lattice.best_gap:.6f} at sigma={lattice.best_params[0]:.3f}, "
          f"search {best.best_gap:.6f} at sigma={best.best_params[0]:.4f}")

# a richer family: Hermite superpositions up to degree 2
d = math.sqrt(math.pi)
spec = FamilySpec("hermite_coeffs", ((0.5, 1.2), (0.0, math.pi), (0.0, math.pi)), degree=2, dx=d, dp=d)
print("Hermite degree 2:", minimize_gap(spec, seed=1, budget=150).best_gap)
