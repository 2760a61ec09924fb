"""
Satake classes from Hecke data
==============================

A local datum (a_p, omega_p) fixes a cubic whose roots are the Satake
parameters.  Below we recover the roots, classify them, and watch the
trace bound |a_p| <= 1 separate tempered from non-tempered classes.
"""

import math

import numpy as np

from ramanujan_primes import (
    HeckeLocalDatum,
    NonTemperedShape,
    class_of,
    classify,
    datum_from_class,
    trace_bound_certificate,
    trace_squared_formula,
)

# Sym^2 of Delta at p = 2: tau(2) = -24, lambda^2 = 576/2048 = 9/32, a_2 = -23/32
d = HeckeLocalDatum(2, -23 / 32, 1)
c = class_of(d)
print("roots:", np.round(c.alphas, 6))
print("moduli:", np.round(c.moduli(), 12))
print("verdict:", classify(c).verdict.value, "| trace bound fires:", trace_bound_certificate(d))

# a non-tempered class {sqrt2, 1/sqrt2, -1}
shape = NonTemperedShape.from_angles(0.5, 0.0, math.pi)
d = datum_from_class(shape.to_class(2))
res = classify(class_of(d))
print("\nnon-tempered a_2 =", round(d.a_p.real, 6), "| verdict:", res.verdict.value,
      "| t =", round(res.shape.t, 6), "| theta =", round(res.shape.theta, 6))

# |a_p|^2 over theta never drops below (p^t + p^-t - 1)^2 > 1
thetas = np.linspace(0, 2 * np.pi, 9)
for p in (2, 3, 101):
    for t in (0.05, 0.25, 0.49):
        vals = [trace_squared_formula(NonTemperedShape(t, 1, np.exp(1j * th), th), p) for th in thetas]
        floor = (p ** t + p ** -t - 1) ** 2
        print(f"p={p:<4} t={t:<5} min |a_p|^2 = {min(vals):.6f}  floor = {floor:.6f}")
