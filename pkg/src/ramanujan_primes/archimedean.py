"""Archimedean gamma factors of the standard and adjoint L-functions.

Parameters are additive: ``L(s, pi_inf) = prod_j Gamma_R(s + z_j + delta_j)``.
Unitarity forces either ``Re z_j = 0`` for all ``j`` or ``z = (z1, u+t, u-t)``
with ``Re z1 = Re u = 0`` and ``t > 0``.  The adjoint parameters are
``{z_i + conj(z_j)}`` with one zero removed.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from scipy.special import loggamma

from .errors import InvalidDatumError, PoleError

__all__ = [
    "POLE_TOL",
    "ArchParams",
    "ArchAdjointSet",
    "gamma_R",
    "is_gamma_R_pole",
    "arch_adjoint_set",
    "adjoint_gamma_factor",
    "pole_order_at_zero",
    "random_arch_params",
]

POLE_TOL = 1e-9


@dataclass(frozen=True)
class ArchParams:
    z: tuple
    delta: tuple = (0, 0, 0)

    def __post_init__(self):
        z = tuple(complex(x) for x in self.z)
        if len(z) != 3 or len(self.delta) != 3:
            raise InvalidDatumError("GL(3) archimedean data has three parameters")
        if any(d not in (0, 1) for d in self.delta):
            raise InvalidDatumError("delta_j must be 0 or 1")
        object.__setattr__(self, "z", z)
        object.__setattr__(self, "delta", tuple(self.delta))
        if not _is_unitary(z):
            raise InvalidDatumError(f"archimedean parameters {z} violate unitarity")

    @property
    def tempered(self) -> bool:
        return all(abs(x.real) <= POLE_TOL for x in self.z)


def _is_unitary(z) -> bool:
    if all(abs(x.real) <= POLE_TOL for x in z):
        return True
    for k in range(3):
        a, b = (z[j] for j in range(3) if j != k)
        if (abs(z[k].real) <= POLE_TOL and abs(a.imag - b.imag) <= POLE_TOL
                and abs(a.real + b.real) <= POLE_TOL):
            return True
    return False


@dataclass(frozen=True)
class ArchAdjointSet:
    B: tuple

    def __len__(self):
        return len(self.B)

    def __iter__(self):
        return iter(self.B)


def is_gamma_R_pole(s, tol: float = POLE_TOL) -> bool:
    """True when ``s`` lies within ``tol`` of ``0, -2, -4, ...``."""
    s = complex(s)
    if abs(s.imag) > tol or s.real > tol:
        return False
    k = round(-s.real / 2)
    return abs(s.real + 2 * k) <= tol


def gamma_R(s) -> complex:
    """``pi^{-s/2} Gamma(s/2)`` through the complex log-gamma function."""
    s = complex(s)
    if is_gamma_R_pole(s):
        raise PoleError(f"Gamma_R has a simple pole at s={s}", order=1)
    return cmath.exp(-0.5 * s * math.log(math.pi) + complex(loggamma(0.5 * s)))


def arch_adjoint_set(params: ArchParams) -> ArchAdjointSet:
    """``{z_i + conj(z_j)}`` minus the diagonal zero with smallest ``|Re z_i|``."""
    z = params.z
    drop = min(range(3), key=lambda i: abs(z[i].real))
    B = [z[i] + z[j].conjugate() for i in range(3) for j in range(3) if (i, j) != (drop, drop)]
    return ArchAdjointSet(tuple(B))


def adjoint_gamma_factor(params: ArchParams, s) -> complex:
    """``prod_{b in B} Gamma_R(s + b)``; raises :class:`PoleError` with the total order."""
    B = arch_adjoint_set(params).B
    order = sum(1 for b in B if is_gamma_R_pole(complex(s) + b))
    if order:
        raise PoleError(f"adjoint gamma factor has a pole of order {order} at s={s}", order)
    out = 1 + 0j
    for b in B:
        out *= gamma_R(complex(s) + b)
    return out


def pole_order_at_zero(params: ArchParams) -> int:
    return sum(1 for b in arch_adjoint_set(params).B if is_gamma_R_pole(b))


def random_arch_params(rng, kind: str = "mixed", scale: float = 10.0,
                       t_max: float = 0.5) -> ArchParams:
    """Random unitary parameters; non-tempered ``t`` is uniform in ``(0, t_max]``."""
    if kind == "mixed":
        kind = "tempered" if rng.random() < 0.5 else "nontempered"
    if kind == "tempered":
        return ArchParams(tuple(1j * rng.uniform(-scale, scale) for _ in range(3)))
    if kind == "nontempered":
        u = 1j * rng.uniform(-scale, scale)
        t = t_max * (1.0 - rng.random())
        return ArchParams((1j * rng.uniform(-scale, scale), u + t, u - t))
    raise ValueError(f"unknown kind {kind!r}")
