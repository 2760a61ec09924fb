"""Unitary GL(3) Satake classes: reconstruction, classification, power traces.

A class ``{a1, a2, a3}`` attached to an unramified prime ``p`` is unitary
when its conjugates and its inverses agree as multisets.  Then either every
entry lies on the unit circle (tempered) or the class has the shape
``{u p^t, u p^-t, w}`` with ``t > 0`` and ``|u| = |w| = 1``.
"""

from __future__ import annotations

import cmath
import enum
import itertools
import math
from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

from .errors import InvalidDatumError, NumericError
from .exact import abs2, conj, is_exact, is_prime

__all__ = [
    "DEFAULT_TOL",
    "HeckeLocalDatum",
    "UnitaryClass3",
    "NonTemperedShape",
    "Temperedness",
    "Classification",
    "elementary_symmetrics",
    "power_traces",
    "roots_oracle",
    "class_of",
    "classify",
    "trace_bound_certificate",
    "trace_squared_formula",
    "unitarity_defect",
    "datum_from_class",
    "random_class",
]

DEFAULT_TOL = 1e-9
_EPS = np.finfo(float).eps


@dataclass(frozen=True)
class HeckeLocalDatum:
    """Trace ``a_p`` and central value ``omega_p`` of the Satake class at ``p``."""

    p: int
    a_p: object
    omega_p: object = 1

    def __post_init__(self):
        if not isinstance(self.p, int) or not is_prime(self.p):
            raise InvalidDatumError(f"p={self.p!r} is not prime")
        if self.omega_p == 0:
            raise InvalidDatumError("omega_p must be nonzero")
        if is_exact(self.omega_p):
            ok = abs2(self.omega_p) == 1
        else:
            ok = abs(abs2(self.omega_p) - 1.0) <= DEFAULT_TOL
        if not ok:
            raise InvalidDatumError(
                f"p={self.p}: |omega_p| = {math.sqrt(float(abs2(self.omega_p))):.12g} is not 1")

    @property
    def exact(self) -> bool:
        return is_exact(self.a_p, self.omega_p)


@dataclass(frozen=True)
class UnitaryClass3:
    """Unordered triple of nonzero complex Satake parameters at prime ``p``.

    Unitarity is *not* enforced on construction so that inconsistent data
    can be represented and reported; see :func:`classify`.
    """

    alphas: tuple
    p: Optional[int] = None

    def __post_init__(self):
        alphas = tuple(self.alphas)
        if len(alphas) != 3:
            raise InvalidDatumError("a GL(3) class has exactly three entries")
        if any(a == 0 for a in alphas):
            raise InvalidDatumError("Satake parameters must be nonzero")
        object.__setattr__(self, "alphas", alphas)

    def moduli(self) -> list[float]:
        return [abs(complex(a)) for a in self.alphas]

    def trace(self):
        return sum(self.alphas[1:], self.alphas[0])

    def det(self):
        a1, a2, a3 = self.alphas
        return a1 * a2 * a3

    def power_sum(self, m: int) -> complex:
        return sum(complex(a) ** m for a in self.alphas)

    def same_multiset(self, other, tol=1e-10) -> bool:
        """Multiset equality up to a relative tolerance."""
        xs = [complex(a) for a in self.alphas]
        ys = [complex(b) for b in other.alphas]
        return any(
            all(abs(x - y) <= tol * max(1.0, abs(x)) for x, y in zip(xs, perm))
            for perm in itertools.permutations(ys)
        )


@dataclass(frozen=True)
class NonTemperedShape:
    """Canonical form ``{u p^t, u p^-t, w}`` with ``t > 0`` and ``e^{i theta} = w / u``."""

    t: float
    u: complex
    w: complex
    theta: float

    def __post_init__(self):
        if not self.t > 0:
            raise InvalidDatumError("non-tempered exponent t must be positive")

    @classmethod
    def from_angles(cls, t, arg_u, arg_w):
        theta = (arg_w - arg_u) % (2 * math.pi)
        return cls(t, cmath.exp(1j * arg_u), cmath.exp(1j * arg_w), theta)

    def alphas(self, p: int) -> tuple:
        return (self.u * p ** self.t, self.u * p ** -self.t, self.w)

    def to_class(self, p: int) -> UnitaryClass3:
        return UnitaryClass3(self.alphas(p), p)


class Temperedness(enum.Enum):
    TEMPERED = "tempered"
    NON_TEMPERED = "non-tempered"
    INCONSISTENT = "inconsistent"


class Classification(NamedTuple):
    verdict: Temperedness
    shape: Optional[NonTemperedShape] = None


def elementary_symmetrics(d: HeckeLocalDatum):
    """``(e1, e2, e3)`` of the class, using ``e2 = omega * conj(a_p)``."""
    return d.a_p, d.omega_p * conj(d.a_p), d.omega_p


def power_traces(e1, e2, e3, M: int) -> tuple:
    """Power sums ``t_1 .. t_M`` from elementary symmetric functions (Newton).

    Exact inputs give exact outputs.
    """
    if M < 1:
        raise ValueError("M must be >= 1")
    t = [e1]
    if M >= 2:
        t.append(e1 * t[0] - 2 * e2)
    if M >= 3:
        t.append(e1 * t[1] - e2 * t[0] + 3 * e3)
    for m in range(3, M):
        t.append(e1 * t[m - 1] - e2 * t[m - 2] + e3 * t[m - 3])
    return tuple(t)


def _horner(coeffs, x):
    """Value and first two derivatives of a polynomial (highest degree first)."""
    f = df = d2f = 0j
    for c in coeffs:
        d2f = d2f * x + 2 * df
        df = df * x + f
        f = f * x + c
    return f, df, d2f


def _scale(coeffs, x):
    ax = abs(x)
    n = len(coeffs) - 1
    return sum(abs(c) * ax ** (n - i) for i, c in enumerate(coeffs))


def _newton(fn, x, tol, maxiter=60):
    for _ in range(maxiter):
        f, df = fn(x)
        if df == 0:
            break
        step = f / df
        x -= step
        if abs(step) <= tol * max(1.0, abs(x)):
            break
    return x


def roots_oracle(e1, e2, e3, tol: float = 1e-12, p: Optional[int] = None) -> UnitaryClass3:
    """Roots of ``X^3 - e1 X^2 + e2 X - e3`` with Newton polishing.

    Companion-matrix roots are polished individually, then clusters are
    tested as multiple roots: a cluster of size ``k`` is replaced by the
    polished root of the ``(k-1)``-th derivative when that point is a root
    of the cubic to working precision.
    """
    if e3 == 0:
        raise InvalidDatumError("e3 = det of the class must be nonzero")
    coeffs = [1.0 + 0j, -complex(e1), complex(e2), -complex(e3)]
    raw = list(np.roots(coeffs))

    def f_df(x):
        f, df, _ = _horner(coeffs, x)
        return f, df

    def df_d2f(x):
        _, df, d2f = _horner(coeffs, x)
        return df, d2f

    def d2f_d3f(x):
        return 6 * x + 2 * coeffs[1], 6.0 + 0j

    roots = [_newton(f_df, complex(r), tol) for r in raw]

    radius = 1e-3
    clusters = []
    for i, r in enumerate(roots):
        for cl in clusters:
            if any(abs(r - roots[j]) <= radius * max(1.0, abs(r)) for j in cl):
                cl.append(i)
                break
        else:
            clusters.append([i])

    for cl in clusters:
        if len(cl) == 1:
            continue
        start = sum(roots[j] for j in cl) / len(cl)
        deriv = df_d2f if len(cl) == 2 else d2f_d3f
        cand = _newton(deriv, start, tol)
        f, _, _ = _horner(coeffs, cand)
        if abs(f) <= 64 * _EPS * _scale(coeffs, cand):
            for j in cl:
                roots[j] = cand

    for r in roots:
        f, _, _ = _horner(coeffs, r)
        if not abs(f) <= 1e3 * _EPS * _scale(coeffs, r):
            raise NumericError(f"cubic root did not converge (residual {abs(f):.3e})")
    return UnitaryClass3(tuple(roots), p)


def class_of(d: HeckeLocalDatum, tol: float = 1e-12) -> UnitaryClass3:
    """Reconstruct the Satake class of a datum via the root oracle."""
    return roots_oracle(*elementary_symmetrics(d), tol=tol, p=d.p)


def unitarity_defect(c: UnitaryClass3) -> float:
    """Smallest relative mismatch between the conjugate and inverse multisets."""
    xs = [complex(a) for a in c.alphas]
    conjs = [x.conjugate() for x in xs]
    invs = [1 / x for x in xs]
    best = math.inf
    for perm in itertools.permutations(invs):
        worst = max(abs(a - b) / max(1.0, abs(a)) for a, b in zip(conjs, perm))
        best = min(best, worst)
    return best


def classify(c: UnitaryClass3, tol: float = DEFAULT_TOL) -> Classification:
    """Tempered, non-tempered (with its canonical shape), or inconsistent.

    The boundary ``|alpha| = 1 +- tol`` counts as tempered.
    """
    if unitarity_defect(c) > tol:
        return Classification(Temperedness.INCONSISTENT)
    if is_exact(*c.alphas):
        if all(abs2(a) == 1 for a in c.alphas):
            return Classification(Temperedness.TEMPERED)
    mods = c.moduli()
    if all(abs(m - 1.0) <= tol for m in mods):
        return Classification(Temperedness.TEMPERED)
    if c.p is None:
        raise ValueError("a non-tempered class needs its prime to extract t")
    order = sorted(range(3), key=lambda i: mods[i])
    lo, mid, hi = (complex(c.alphas[i]) for i in order)
    if abs(abs(mid) - 1.0) > tol:
        return Classification(Temperedness.INCONSISTENT)
    t = math.log(abs(hi)) / math.log(c.p)
    u = hi / abs(hi)
    w = mid / abs(mid)
    theta = cmath.phase(w / u) % (2 * math.pi)
    return Classification(Temperedness.NON_TEMPERED, NonTemperedShape(t, u, w, theta))


def trace_bound_certificate(d: HeckeLocalDatum) -> bool:
    """``|a_p| <= 1`` certifies temperedness (exact when the datum is exact).

    For a non-tempered class ``|a_p|^2 >= (p^t + p^-t - 1)^2 > 1``.
    """
    return abs2(d.a_p) <= 1


def trace_squared_formula(shape: NonTemperedShape, p: int) -> float:
    """``|a_p|^2`` of ``{u p^t, u p^-t, w}`` in terms of ``t`` and ``theta``."""
    x = p ** shape.t + p ** -shape.t
    return 3 + p ** (2 * shape.t) + p ** (-2 * shape.t) + 2 * math.cos(shape.theta) * x


def datum_from_class(c: UnitaryClass3) -> HeckeLocalDatum:
    """Hecke datum ``(p, trace, det)`` of a unitary class."""
    det = c.det()
    if not is_exact(det):
        det = complex(det)
        det /= abs(det)
    return HeckeLocalDatum(c.p, c.trace(), det)


def random_class(rng: np.random.Generator, p: int, kind: str = "mixed",
                 t_max: float = 0.49) -> UnitaryClass3:
    """Random unitary class at ``p``.

    ``kind`` is ``"tempered"``, ``"nontempered"`` (``t`` uniform in
    ``(0, t_max]``, ``u``, ``w`` uniform on the circle) or ``"mixed"``.
    """
    if kind == "mixed":
        kind = "tempered" if rng.random() < 0.5 else "nontempered"
    if kind == "tempered":
        angles = rng.uniform(0.0, 2 * math.pi, size=3)
        return UnitaryClass3(tuple(cmath.exp(1j * a) for a in angles), p)
    if kind == "nontempered":
        t = t_max * (1.0 - rng.random())  # (0, t_max]
        arg_u, arg_w = rng.uniform(0.0, 2 * math.pi, size=2)
        return NonTemperedShape.from_angles(t, arg_u, arg_w).to_class(p)
    raise ValueError(f"unknown class kind {kind!r}")
