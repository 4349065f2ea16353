"""
Angle versus angular momentum, and N-level systems
==================================================

For a rotator the bound is ``-ln(dphi / 2 pi)`` whatever the orders, and every
eigenstate of ``M_z`` reaches it. For ``N`` states related by the discrete
Fourier transformation the bound is ``ln N``.
"""

import math

import numpy as np

from renyi_uncertainty import AngularState, NLevelState, verify_angle, verify_angle_continuous, verify_nlevel

m3 = AngularState.eigenstate(3)
for k in (1, 16, 360):
    r = verify_angle(m3, 3.0, 2 * math.pi / k)
    print(f"eigenstate, {k:>3} bins: lhs={r.lhs:.10f} rhs={r.rhs:.10f}")
print("continuous angle:", verify_angle_continuous(m3, 0.6).gap)

# a superposition of neighbouring m values is spread in M_z but not flat in angle
cat = AngularState([1 / math.sqrt(2), 1 / math.sqrt(2)], m_min=0)
print("superposition gap:", verify_angle(cat, 2.0, 2 * math.pi / 64).gap)

# N-level: localized and uniform states saturate, others do not
for state in (NLevelState.basis_state(8, 3), NLevelState.uniform(8)):
    print("N=8 saturating gap:", verify_nlevel(state, 2.0).gap)
rng = np.random.default_rng(0)
v = rng.standard_normal(8) + 1j * rng.standard_normal(8)
print("N=8 random gap:", verify_nlevel(NLevelState(v / np.linalg.norm(v)), 2.0).gap)
