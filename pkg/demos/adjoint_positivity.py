"""
Positivity of the local adjoint coefficients
============================================

For a non-tempered class the adjoint coefficients a_{p^m} = |t_m|^2 - 1
are all positive, so a single negative coefficient certifies that the
prime is tempered.  Here we tabulate both sides.
"""

import numpy as np

from ramanujan_primes import (
    adjoint_coefficients,
    certify_prime,
    datum_from_class,
    random_class,
)

np.set_printoptions(precision=4, suppress=True, linewidth=100)
rng = np.random.default_rng(7)

print("non-tempered classes, p = 5, first six coefficients")
for _ in range(4):
    d = datum_from_class(random_class(rng, 5, kind="nontempered"))
    print("  ", np.round(np.array(adjoint_coefficients(d, 6), dtype=float), 4))

print("\ntempered classes, p = 5, first six coefficients")
for _ in range(4):
    d = datum_from_class(random_class(rng, 5, kind="tempered"))
    cert = certify_prime(d)
    print("  ", np.round(np.array(adjoint_coefficients(d, 6), dtype=float), 4),
          "->", cert.verdict.value, f"({cert.reason.value if cert.reason else '-'})")

# how often does the cheap route (trace bound or a negative coefficient) suffice?
counts = {}
for _ in range(2000):
    d = datum_from_class(random_class(rng, 11, kind="tempered"))
    reason = certify_prime(d, use_oracle=False).reason
    key = reason.value if reason else "undetermined"
    counts[key] = counts.get(key, 0) + 1
print("\n2000 random tempered classes at p = 11, no root oracle:", counts)
