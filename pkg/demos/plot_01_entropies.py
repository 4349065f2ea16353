"""
Rényi entropies of a discrete distribution
==========================================

Entropies are measured in nats. The order ``alpha`` interpolates between the
logarithm of the support size (``alpha -> 0``) and the min-entropy
(``alpha -> inf``); at ``alpha = 1`` it is the Shannon entropy.
"""

import numpy as np

from renyi_uncertainty import ProbVec, conjugate_order, renyi_entropy, shannon_entropy, symmetrized_entropy

p = ProbVec([0.75, 0.25])

# nonincreasing in the order
for alpha in (0.25, 0.5, 2 / 3, 1.0, 2.0, 10.0):
    print(f"H_{alpha:<6.4g} = {float(renyi_entropy(p, alpha)):.6f}")

print("Shannon     =", float(shannon_entropy(p)))

# conjugate orders pair up as 1/alpha + 1/beta = 2
for alpha in (0.6, 1.0, 2.0, 4.0):
    print(f"alpha={alpha}  beta={conjugate_order(alpha):.6f}")

# the symmetrized entropy at s averages the two conjugate orders
print("symmetrized s=1/2:", float(symmetrized_entropy(p, 0.5)),
      "=", 0.5 * (float(renyi_entropy(p, 2)) + float(renyi_entropy(p, 2 / 3))))

# independent distributions: entropies add
q = ProbVec(np.array([0.1, 0.2, 0.7]))
joint = ProbVec.product(p, q)
print("additivity:", float(renyi_entropy(joint, 3)), float(renyi_entropy(p, 3)) + float(renyi_entropy(q, 3)))
