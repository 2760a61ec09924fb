"""Adjoint lift of a GL(3) class, its Dirichlet coefficients and local factors."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

from .errors import DomainError, InvalidClassError, InvalidDatumError
from .exact import abs2
from .satake import (
    DEFAULT_TOL,
    HeckeLocalDatum,
    Temperedness,
    UnitaryClass3,
    class_of,
    classify,
    elementary_symmetrics,
    power_traces,
    trace_bound_certificate,
)

__all__ = [
    "AdjointClass8",
    "Verdict",
    "Reason",
    "RamanujanCertificate",
    "adjoint_class",
    "adjoint_coefficient",
    "adjoint_coefficients",
    "rankin_coefficient",
    "local_zeta",
    "local_factor_rankin",
    "local_factor_adjoint",
    "certify_prime",
    "DEFAULT_DEPTH",
]

DEFAULT_DEPTH = 5


@dataclass(frozen=True)
class AdjointClass8:
    eigenvalues: tuple
    p: Optional[int] = None

    def trace(self) -> complex:
        return sum(self.eigenvalues)


class Verdict(enum.Enum):
    RAMANUJAN_CERTIFIED = "ramanujan-certified"
    NON_TEMPERED_CERTIFIED = "non-tempered-certified"
    UNDETERMINED = "undetermined"


class Reason(enum.Enum):
    TRACE_BOUND = "trace-bound"
    NEGATIVE_ADJOINT_COEFFICIENT = "negative-adjoint-coefficient"
    ORACLE_ROOT_MODULUS = "oracle-root-modulus"


@dataclass(frozen=True)
class RamanujanCertificate:
    """Verdict for one prime.

    ``witness`` is the power ``m`` for a negative-coefficient certificate,
    the largest root modulus for an oracle certificate, and ``None`` for a
    trace-bound certificate.  ``value`` carries the witnessing quantity
    (``|a_p|^2`` or the negative coefficient) when there is one.
    """

    p: int
    verdict: Verdict
    reason: Optional[Reason] = None
    witness: object = None
    value: object = None

    def __post_init__(self):
        if self.verdict is not Verdict.UNDETERMINED and self.reason is None:
            raise ValueError("a certified verdict needs a reason")


def _require_unitary(c: UnitaryClass3, tol: float):
    if classify(c, tol).verdict is Temperedness.INCONSISTENT:
        raise InvalidClassError(f"class {c.alphas} fails the unitarity symmetry")


def adjoint_class(c: UnitaryClass3, tol: float = DEFAULT_TOL) -> AdjointClass8:
    """``A (x) conj(A)`` minus one eigenvalue 1.

    The removed entry is the diagonal product ``a_i conj(a_i)`` whose
    ``|a_i|`` is closest to 1.
    """
    _require_unitary(c, tol)
    xs = [complex(a) for a in c.alphas]
    drop = min(range(3), key=lambda i: abs(abs(xs[i]) - 1.0))
    eig = [xs[i] * xs[j].conjugate()
           for i in range(3) for j in range(3) if (i, j) != (drop, drop)]
    return AdjointClass8(tuple(eig), c.p)


def adjoint_coefficients(d: HeckeLocalDatum, M: int) -> tuple:
    """``a_{p^m}(Ad) = |tr A^m|^2 - 1`` for ``m = 1..M``; exact for exact data."""
    return tuple(abs2(t) - 1 for t in power_traces(*elementary_symmetrics(d), M))


def adjoint_coefficient(d: HeckeLocalDatum, m: int):
    if m < 1:
        raise ValueError("m must be >= 1")
    return adjoint_coefficients(d, m)[-1]


def rankin_coefficient(d: HeckeLocalDatum, m: int):
    """Log coefficient ``|tr A^m|^2 / m`` of the local Rankin-Selberg factor."""
    return abs2(power_traces(*elementary_symmetrics(d), m)[-1]) / m


def local_zeta(p: int, s) -> complex:
    return 1 / (1 - p ** (-complex(s)))


def _euler_product(values, p, s):
    s = complex(s)
    radius = max(abs(v) for v in values) * p ** (-s.real)
    if radius >= 1:
        raise DomainError(
            f"s={s} is inside the pole radius (|x| p^-Re(s) = {radius:.6g} >= 1)")
    ps = p ** (-s)
    out = 1 + 0j
    for v in values:
        out /= 1 - v * ps
    return out


def local_factor_rankin(c: UnitaryClass3, s, tol: float = DEFAULT_TOL) -> complex:
    """``prod_{i,j} (1 - a_i conj(a_j) p^-s)^-1``."""
    _require_unitary(c, tol)
    xs = [complex(a) for a in c.alphas]
    return _euler_product([x * y.conjugate() for x in xs for y in xs], c.p, s)


def local_factor_adjoint(c: UnitaryClass3, s, tol: float = DEFAULT_TOL) -> complex:
    """Eight-factor local adjoint Euler factor; never zero where defined."""
    return _euler_product(adjoint_class(c, tol).eigenvalues, c.p, s)


def certify_prime(d: HeckeLocalDatum, M: int = DEFAULT_DEPTH, delta: Optional[float] = None,
                  use_oracle: bool = True, tol: float = DEFAULT_TOL) -> RamanujanCertificate:
    """Certify ``d.p`` as tempered, non-tempered, or leave it undetermined.

    A non-tempered class has every adjoint coefficient strictly positive,
    so ``|a_p| <= 1`` or any negative ``a_{p^m}(Ad)`` proves temperedness.
    ``delta`` is the negativity margin (default 0 for exact data, ``tol``
    otherwise).  The root oracle is consulted last.
    """
    if M < 0:
        raise ValueError("M must be >= 0")
    exact = d.exact
    if delta is None:
        delta = 0 if exact else tol
    if delta < 0:
        raise ValueError("delta must be >= 0")

    if trace_bound_certificate(d):
        return RamanujanCertificate(d.p, Verdict.RAMANUJAN_CERTIFIED, Reason.TRACE_BOUND,
                                    None, abs2(d.a_p))
    if M >= 1:
        for m, coeff in enumerate(adjoint_coefficients(d, M), start=1):
            negative = coeff < 0 if exact and delta == 0 else coeff < -delta
            if negative:
                return RamanujanCertificate(d.p, Verdict.RAMANUJAN_CERTIFIED,
                                            Reason.NEGATIVE_ADJOINT_COEFFICIENT, m, coeff)
    if not use_oracle:
        return RamanujanCertificate(d.p, Verdict.UNDETERMINED)

    c = class_of(d)
    cls = classify(c, tol)
    if cls.verdict is Temperedness.INCONSISTENT:
        raise InvalidDatumError(f"p={d.p}: reconstructed class is not unitary")
    top = max(c.moduli())
    if top >= 1 + max(delta, 10 * tol):
        return RamanujanCertificate(d.p, Verdict.NON_TEMPERED_CERTIFIED,
                                    Reason.ORACLE_ROOT_MODULUS, top)
    if cls.verdict is Temperedness.TEMPERED:
        return RamanujanCertificate(d.p, Verdict.RAMANUJAN_CERTIFIED,
                                    Reason.ORACLE_ROOT_MODULUS, top)
    return RamanujanCertificate(d.p, Verdict.UNDETERMINED)

