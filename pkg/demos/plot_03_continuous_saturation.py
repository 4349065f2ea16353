"""
Gaussians saturate the continuous relations
===========================================

For integral entropies of the densities themselves the bound is
``ln(e pi)`` at ``alpha = 1`` and Gaussians reach it for every order. Other
states stay strictly above.
"""

import math

from renyi_uncertainty import make_gaussian, make_hermite_superposition, verify_xp_continuous

ground = make_gaussian(0.0, 0.0, 1 / math.sqrt(2))
for alpha in (0.6, 0.75, 1.0, 1.5, 2.0, 4.0):
    r = verify_xp_continuous(ground, alpha)
    print(f"alpha={alpha:<5} lhs={r.lhs:.12f} rhs={r.rhs:.12f} saturated={r.saturated}")

# squeezing and displacement keep Gaussians on the bound
print(verify_xp_continuous(make_gaussian(1.5, -0.7, 0.4), 2.0).gap)

# the first excited state does not
excited = make_hermite_superposition([0, 1])
print("first excited state gap:", verify_xp_continuous(excited, 1.0).gap)
