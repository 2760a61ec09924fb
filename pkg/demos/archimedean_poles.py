"""
Poles of the archimedean adjoint factor
=======================================

The adjoint gamma factor is a product of Gamma_R(s + b) over the eight
parameters b = z_i + conj(z_j) (one diagonal zero removed).  At s = 0
it always has a pole: at least one zero survives in the set.
"""

from collections import Counter

import numpy as np

from ramanujan_primes import (
    ArchParams,
    adjoint_gamma_factor,
    arch_adjoint_set,
    gamma_R,
    pole_order_at_zero,
    random_arch_params,
)

print("Gamma_R(1) =", gamma_R(1).real, " Gamma_R(2) * pi =", (gamma_R(2) * np.pi).real)

for z in ((0, 0, 0), (1j, 0, -1j), (0, 1 / 3, -1 / 3), (2j, 0.2 + 1j, -0.2 + 1j)):
    params = ArchParams(z)
    B = arch_adjoint_set(params).B
    print(f"\nz = {z}")
    print("  B =", np.round(B, 4))
    print("  pole order at 0:", pole_order_at_zero(params))
    print("  factor at s=1:", np.round(adjoint_gamma_factor(params, 1.0), 8))

rng = np.random.default_rng(11)
orders = Counter(pole_order_at_zero(random_arch_params(rng)) for _ in range(5000))
print("\npole orders over 5000 random parameter sets:", dict(sorted(orders.items())))
