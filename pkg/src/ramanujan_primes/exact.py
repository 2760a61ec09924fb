"""Exact Gaussian-rational numbers and small numeric helpers.

Values flowing through the package are either *exact* (``int``,
``Fraction``, :class:`GaussianRational`) or floating (``float``,
``complex``).  The helpers here dispatch on that distinction so the same
recursions serve both modes.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational

__all__ = [
    "GaussianRational",
    "abs2",
    "conj",
    "is_exact",
    "to_complex",
    "to_exact",
    "format_number",
    "primes_upto",
    "is_prime",
    "first_primes",
]


class GaussianRational:
    """``re + im*i`` with ``Fraction`` parts; immutable and hashable."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    @classmethod
    def _coerce(cls, other):
        if isinstance(other, GaussianRational):
            return other
        if isinstance(other, Rational):
            return cls(other, 0)
        return None

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def abs2(self):
        return self.re * self.re + self.im * self.im

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return complex(self) + other
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return complex(self) - other
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return other - complex(self)
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return complex(self) * other
        return GaussianRational(self.re * o.re - self.im * o.im,
                                self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return complex(self) / other
        n = o.abs2()
        if n == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        q = self * o.conjugate()
        return GaussianRational(q.re / n, q.im / n)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return other / complex(self)
        return o / self

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def __pow__(self, n):
        if not isinstance(n, int):
            return complex(self) ** n
        if n < 0:
            return 1 / (self ** -n)
        result, base = GaussianRational(1), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            if isinstance(other, (float, complex)):
                return complex(self) == other
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    @property
    def real(self):
        return self.re

    @property
    def imag(self):
        return self.im

    def __repr__(self):
        return f"GaussianRational({self.re!s}, {self.im!s})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        sign = "-" if self.im < 0 else "+"
        return f"{self.re}{sign}{abs(self.im)}i"


_EXACT_TYPES = (int, Fraction, GaussianRational)


def is_exact(*values) -> bool:
    """True when every value is an exact (rational or Gaussian-rational) number."""
    return all(isinstance(v, _EXACT_TYPES) and not isinstance(v, bool) for v in values)


def conj(x):
    return x.conjugate()


def abs2(x):
    """Squared modulus, exact for exact inputs."""
    if isinstance(x, GaussianRational):
        return x.abs2()
    if isinstance(x, (int, Fraction)):
        return x * x
    x = complex(x)
    return x.real * x.real + x.imag * x.imag


def to_complex(x) -> complex:
    return complex(x)


def to_exact(x):
    """Normalize an exact value: drop a zero imaginary part to a ``Fraction``."""
    if isinstance(x, GaussianRational):
        return x.re if x.im == 0 else x
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    raise TypeError(f"{x!r} is not exact")


def format_number(x) -> str:
    """Compact text form used in reports and serialized corpora."""
    if isinstance(x, (int, Fraction)):
        return str(Fraction(x))
    if isinstance(x, GaussianRational):
        return str(x)
    if isinstance(x, complex):
        return repr(x)
    return repr(float(x))


def primes_upto(n: int) -> list[int]:
    """Primes ``<= n`` by a sieve of Eratosthenes."""
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, math.isqrt(n) + 1):
        if sieve[i]:
            sieve[i * i::i] = bytearray(len(range(i * i, n + 1, i)))
    return [i for i, flag in enumerate(sieve) if flag]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    return all(n % d for d in range(3, math.isqrt(n) + 1, 2))


def first_primes(k: int) -> list[int]:
    bound = 16
    while True:
        ps = primes_upto(bound)
        if len(ps) >= k:
            return ps[:k]
        bound *= 2
