"""Truncated log-Dirichlet series of incomplete adjoint Euler products.

The series stores ``a_{p^m}(Ad)`` for every prime ``p <= P_max`` outside the
excluded set and every ``m <= M_max``.  Since

    log L_p(s, Ad) = sum_m a_{p^m}(Ad) p^{-ms} / m,

positive type is decided by the signs of the stored coefficients, while
evaluation applies the ``1/m`` weights.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Union

from .adjoint import adjoint_coefficients
from .errors import DomainError, IncompleteDataError
from .exact import is_exact, primes_upto
from .satake import DEFAULT_TOL, HeckeLocalDatum

__all__ = [
    "ARCHIMEDEAN",
    "LogDirichletSeries",
    "PositivityReport",
    "EvalResult",
    "WitnessReport",
    "build_adjoint_log_series",
    "positive_type_scan",
    "evaluate_incomplete",
    "log_tail_bound",
    "witness_report",
]

ARCHIMEDEAN = "inf"
# |a_{p^m}(Ad)| <= |tr A^m|^2 <= 9 rho^(2m), rho = largest |alpha| at p.
COEFF_BOUND = 9


@dataclass(frozen=True)
class LogDirichletSeries:
    entries: Mapping[tuple, object]
    excluded: frozenset
    window: tuple
    # p -> upper bound for rho^2; missing primes fall back to p (t < 1/2)
    radius_sq: Mapping[int, float] = field(default_factory=dict)

    @property
    def exact(self) -> bool:
        return is_exact(*self.entries.values())

    def primes(self) -> list[int]:
        return sorted({p for p, _ in self.entries})

    def sorted_items(self):
        return sorted(self.entries.items())


@dataclass(frozen=True)
class PositivityReport:
    is_positive_type: bool
    first_negative: Optional[tuple]
    negative_count: int
    scanned: int
    window: tuple

    def __post_init__(self):
        if self.is_positive_type != (self.first_negative is None):
            raise ValueError("positive type iff no negative coefficient")


@dataclass(frozen=True)
class EvalResult:
    """Truncated value with an absolute error bound against the full product.

    ``log_tail_bound`` bounds the omitted part of the log series (primes
    beyond the window and powers beyond ``M_max``); ``tail_bound`` is the
    induced bound ``value * expm1(log_tail_bound)`` on the value itself.
    """

    value: float
    tail_bound: float
    s: float
    log_tail_bound: float
    window: tuple


@dataclass(frozen=True)
class WitnessReport:
    witnesses: tuple
    scanned: int
    window: tuple
    excluded: frozenset = field(default_factory=frozenset)

    @property
    def count(self) -> int:
        return len(self.witnesses)

    @property
    def density(self) -> float:
        return self.count / self.scanned if self.scanned else 0.0

    def primes(self) -> list[int]:
        return [w[0] for w in self.witnesses]


def _as_mapping(data) -> dict:
    if hasattr(data, "data") and isinstance(data.data, Mapping):
        data = data.data
    if isinstance(data, Mapping):
        return dict(data)
    out = {}
    for d in data:
        out[d.p] = d
    return out


def build_adjoint_log_series(data: Union[Iterable[HeckeLocalDatum], Mapping], S: Iterable = (),
                             window: tuple = (1000, 5)) -> LogDirichletSeries:
    """Adjoint log series over primes ``<= P_max`` outside ``S``.

    ``data`` may be a corpus object (its ramified primes join ``S``), a
    mapping ``p -> datum`` or any iterable of data.
    """
    p_max, m_max = window
    if p_max < 1 or m_max < 1:
        raise ValueError("window must be positive")
    excluded = set(S) | {ARCHIMEDEAN}
    excluded |= set(getattr(data, "ramified", ()))
    by_prime = _as_mapping(data)
    wanted = [p for p in primes_upto(p_max) if p not in excluded]
    missing = [p for p in wanted if p not in by_prime]
    if missing:
        raise IncompleteDataError(missing)
    entries = {}
    radius_sq = {}
    for p in wanted:
        d = by_prime[p]
        for m, c in enumerate(adjoint_coefficients(d, m_max), start=1):
            entries[(p, m)] = c
        # rho - 1 <= p^t + p^-t - 1 <= |a_p| for a unitary class
        radius_sq[p] = min(float(p), (abs(complex(d.a_p)) + 1.0) ** 2)
    return LogDirichletSeries(entries, frozenset(excluded), (p_max, m_max), radius_sq)


def _is_negative(c, delta) -> bool:
    if is_exact(c):
        return c < 0
    return c < -delta


def positive_type_scan(series: LogDirichletSeries, delta: float = DEFAULT_TOL) -> PositivityReport:
    """Scan coefficients in increasing ``(p, m)`` for a negative entry.

    Exact coefficients are compared with 0; floating ones with ``-delta``.
    """
    first = None
    count = 0
    for (p, m), c in series.sorted_items():
        if _is_negative(c, delta):
            count += 1
            if first is None:
                first = (p, m, c)
    return PositivityReport(first is None, first, count, len(series.entries), series.window)


def log_tail_bound(series: LogDirichletSeries, s: float) -> float:
    """Bound on the log-series terms omitted by the window.

    Uses ``|a_{p^m}| <= 9 rho_p^{2m}`` where ``rho_p^2 <= min(p, (|a_p|+1)^2)``;
    the ``p`` branch, and everything beyond ``P_max``, assumes every
    non-tempered exponent satisfies ``t < 1/2``.  Primes above ``P_max``
    are bounded by the integral of ``x^{1-s}``.
    """
    p_max, m_max = series.window
    sigma = s - 1.0
    start = p_max + 1
    geom = 1.0 / (1.0 - start ** -sigma)
    beyond = COEFF_BOUND * geom * (p_max ** (-(s - 2.0)) / (s - 2.0) if p_max > 1
                                   else _zeta_tail_from_two(s))
    deeper = 0.0
    for p in series.primes():
        x = series.radius_sq.get(p, float(p)) * p ** -s
        deeper += COEFF_BOUND * x ** (m_max + 1) / ((m_max + 1) * (1.0 - x))
    return beyond + deeper


def _zeta_tail_from_two(s: float) -> float:
    # sum_{n>=2} n^{1-s} <= 2^{1-s} + int_2^inf x^{1-s} dx
    return 2.0 ** (1.0 - s) + 2.0 ** (2.0 - s) / (s - 2.0)


def evaluate_incomplete(series: LogDirichletSeries, s: float) -> EvalResult:
    """``exp(sum_{p,m} a_{p^m} p^{-ms} / m)`` with a tail bound; needs ``s > 2``."""
    s = float(s)
    if not s > 2:
        raise DomainError(f"s={s}: evaluation needs s > 2 for a computable tail")
    # fsum over a sorted view keeps the result independent of insertion order.
    total = math.fsum(float(c) * p ** (-m * s) / m for (p, m), c in series.sorted_items())
    value = math.exp(total)
    log_tail = log_tail_bound(series, s)
    return EvalResult(value, value * math.expm1(log_tail), s, log_tail, series.window)


def witness_report(data, S: Iterable = (), window: tuple = (1000, 5),
                   delta: float = DEFAULT_TOL) -> WitnessReport:
    """Primes in the window with a negative adjoint coefficient at some ``m``.

    Each such prime is tempered, because a non-tempered class has all its
    adjoint coefficients positive.  Witness entries are ``(p, m, value)``
    for the smallest such ``m``.
    """
    series = build_adjoint_log_series(data, S, window)
    first_by_prime = {}
    for (p, m), c in series.sorted_items():
        if p not in first_by_prime and _is_negative(c, delta):
            first_by_prime[p] = (p, m, c)
    witnesses = tuple(first_by_prime[p] for p in sorted(first_by_prime))
    return WitnessReport(witnesses, len(series.primes()), window, series.excluded)
