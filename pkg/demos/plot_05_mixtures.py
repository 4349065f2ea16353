"""
Mixed states
============

Mixing happens at the level of probability densities. The same bounds
apply, and the Minkowski inequality shows which way mixing moves the norms.
"""

import numpy as np

from renyi_uncertainty import MixedState, Mixture, make_gaussian, mix, verify_xp, verify_xp_continuous

left = make_gaussian(-2.0, 0.0, 0.6)
right = make_gaussian(2.0, 1.0, 0.6)
cat_mix = MixedState(((0.5, left), (0.5, right)))

for alpha in (0.7, 2.0):
    r = verify_xp(cat_mix, alpha, 0.5, 0.5)
    print(f"mixture, alpha={alpha}: gap={r.gap:.4f}")
print("continuous:", verify_xp_continuous(cat_mix, 1.0).gap)

# norms: ||mix||_a <= mix of ||.||_a for a > 1, reversed below 1
a, b = left.density(), right.density()
m = mix(Mixture(((0.5, a), (0.5, b))))
for order in (0.7, 2.0):
    print(order, m.norm(order), 0.5 * a.norm(order) + 0.5 * b.norm(order))
print("density value at 0:", np.interp(0.0, m.grid.points, m.values))
