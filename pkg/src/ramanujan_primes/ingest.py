"""Corpus ingestion: tabular files, Delta's q-expansion, symmetric-square lifts.

Corpus files are UTF-8 text.  Lines starting with ``#`` are comments.  The
first other line is a typed header ``format=<kind> key=value ...``; every
following line is a whitespace- or comma-separated row.

``format=gl3`` (optional ``ramified=p1,p2`` or ``level=N``)
    ``p  Re(a_p)  Im(a_p)  [Re(omega_p)  Im(omega_p)]``; omega defaults to 1.
``format=gl2 weight=k level=N``
    ``p  a_p`` with integer ``a_p``; rows are lifted to GL(3) by Sym^2.
``format=synthetic``
    ``p  t  theta  arg_u  arg_w`` building ``{u p^t, u p^-t, w}``.

Numbers may be integers, decimals, fractions ``n/d`` or multiples of
``pi`` (``pi``, ``-pi/2``, ``3*pi/4``).  Integers and fractions are read
exactly; decimals too, unless the header says ``numbers=float``.
"""

from __future__ import annotations

import io
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Mapping, Optional

from .errors import CorpusParseError, CorpusValidationError, DuplicatePrimeError
from .exact import GaussianRational, abs2, is_exact, is_prime, primes_upto
from .satake import DEFAULT_TOL, HeckeLocalDatum, NonTemperedShape

__all__ = [
    "NewformRecord",
    "GL3Corpus",
    "delta_coefficients",
    "delta_qexpansion",
    "delta_newform",
    "normalize_gl2",
    "normalized_square",
    "sym_square_datum",
    "lift_newform",
    "synthetic_datum",
    "synthetic_corpus",
    "parse_corpus",
    "load_corpus",
    "serialize_corpus",
    "PROVENANCES",
]

PROVENANCES = ("lifted-from-newform", "synthetic", "file")
MAX_QEXP = 10_000


@dataclass(frozen=True)
class NewformRecord:
    weight: int
    level: int
    coefficients: Mapping[int, int]

    def __post_init__(self):
        if self.weight < 2 or self.weight % 2:
            raise CorpusValidationError(f"weight {self.weight} must be even and >= 2")
        if self.level < 1:
            raise CorpusValidationError(f"level {self.level} must be positive")

    def deligne_flags(self) -> dict:
        """``p -> (|a_p| <= 2 p^{(k-1)/2})``, decided exactly on squares."""
        k = self.weight
        return {p: a * a <= 4 * p ** (k - 1) for p, a in self.coefficients.items()}


@dataclass(frozen=True)
class GL3Corpus:
    """One Hecke datum per prime plus bookkeeping.

    ``inconsistent`` holds rows whose central value is not of modulus 1;
    they carry no datum and are reported rather than certified.
    """

    data: Mapping[int, HeckeLocalDatum]
    provenance: str = "file"
    ramified: frozenset = frozenset()
    level: Optional[int] = None
    inconsistent: Mapping[int, tuple] = field(default_factory=dict)

    def __post_init__(self):
        if self.provenance not in PROVENANCES:
            raise ValueError(f"unknown provenance {self.provenance!r}")
        if self.level is not None:
            expected = frozenset(p for p in primes_upto(self.level) if self.level % p == 0)
            if not expected <= frozenset(self.ramified):
                raise CorpusValidationError(
                    f"ramified set {sorted(self.ramified)} misses primes dividing level {self.level}")

    def primes(self) -> list[int]:
        return sorted(set(self.data) | set(self.inconsistent))

    def __len__(self):
        return len(self.data)

    def restrict(self, p_max: int) -> "GL3Corpus":
        return GL3Corpus({p: d for p, d in self.data.items() if p <= p_max}, self.provenance,
                         self.ramified, self.level,
                         {p: v for p, v in self.inconsistent.items() if p <= p_max})


def delta_coefficients(n_max: int) -> list[int]:
    """``tau(0..n_max)`` from ``q prod (1 - q^n)^24`` in exact integers.

    ``prod (1 - q^n)`` is Euler's pentagonal series; its 24th power follows
    from the power recurrence ``n g_n = sum_k (25 k - n) h_k g_{n-k}``,
    which only touches the sparse pentagonal terms ``h_k``.
    """
    if n_max > MAX_QEXP:
        raise ValueError(f"q-expansion limited to {MAX_QEXP} terms")
    if n_max < 1:
        return [0] * (n_max + 1) if n_max >= 0 else []
    size = n_max  # g_0 .. g_{n_max-1}; tau(n) = g_{n-1}
    pent = {}
    k = 0
    while True:
        k += 1
        g1, g2 = k * (3 * k - 1) // 2, k * (3 * k + 1) // 2
        if g1 >= size:
            break
        sign = -1 if k % 2 else 1
        pent[g1] = sign
        if g2 < size:
            pent[g2] = sign
    terms = sorted(pent.items())
    g = [0] * size
    g[0] = 1
    for n in range(1, size):
        acc = 0
        for j, h in terms:
            if j > n:
                break
            acc += (25 * j - n) * h * g[n - j]
        g[n] = acc // n
    return [0] + g


def delta_qexpansion(p_max: int) -> dict:
    """``p -> tau(p)`` for primes ``p <= p_max``."""
    tau = delta_coefficients(p_max)
    return {p: tau[p] for p in primes_upto(p_max)}


def delta_newform(p_max: int) -> NewformRecord:
    return NewformRecord(12, 1, delta_qexpansion(p_max))


def normalized_square(a_p: int, p: int, k: int) -> Fraction:
    """``lambda_p^2 = a_p^2 / p^{k-1}`` exactly."""
    return Fraction(a_p * a_p, p ** (k - 1))


def normalize_gl2(a_p: int, p: int, k: int) -> float:
    """``lambda_p = a_p p^{-(k-1)/2}`` in floating point."""
    return a_p / p ** ((k - 1) / 2)


def sym_square_datum(lam_sq, p: int) -> HeckeLocalDatum:
    """Sym^2 datum: ``{a, a^-1} -> {a^2, 1, a^-2}``, trace ``lambda^2 - 1``."""
    if lam_sq < 0:
        raise ValueError("lambda_p^2 must be non-negative")
    return HeckeLocalDatum(p, lam_sq - 1, 1)


def lift_newform(form: NewformRecord) -> GL3Corpus:
    ramified = frozenset(p for p in primes_upto(form.level) if form.level % p == 0)
    data = {p: sym_square_datum(normalized_square(a, p, form.weight), p)
            for p, a in sorted(form.coefficients.items()) if p not in ramified}
    return GL3Corpus(data, "lifted-from-newform", ramified, form.level)


def synthetic_datum(p: int, t: float, arg_u: float, arg_w: float) -> HeckeLocalDatum:
    shape = NonTemperedShape.from_angles(t, arg_u, arg_w)
    a1, a2, a3 = shape.alphas(p)
    det = shape.u * shape.u * shape.w
    return HeckeLocalDatum(p, a1 + a2 + a3, det / abs(det))


def synthetic_corpus(p_max: int, t: float = 0.25, theta: float = 0.0,
                     arg_u: float = 0.0) -> GL3Corpus:
    """Non-tempered classes with the same ``(t, theta)`` at every prime."""
    data = {p: synthetic_datum(p, t, arg_u, arg_u + theta) for p in primes_upto(p_max)}
    return GL3Corpus(data, "synthetic")


_PI_RE = re.compile(r"^([+-]?)(\d+(?:\.\d*)?)?\*?pi(?:/(\d+(?:\.\d*)?))?$")


_EXACT_RE = re.compile(r"^[+-]?\d+(/\d+)?$")


def _number(token: str, lineno: int, decimals_exact: bool = True):
    tok = token.strip().replace("π", "pi").replace("−", "-")
    m = _PI_RE.match(tok)
    if m:
        sign, mult, div = m.groups()
        val = math.pi * (float(mult) if mult else 1.0) / (float(div) if div else 1.0)
        return -val if sign == "-" else val
    if decimals_exact or _EXACT_RE.match(tok):
        try:
            return Fraction(tok)
        except (ValueError, ZeroDivisionError):
            pass
    try:
        return float(tok)
    except ValueError:
        raise CorpusParseError(f"cannot parse number {token!r}", lineno) from None


def _prime(token: str, lineno: int) -> int:
    try:
        p = int(token)
    except ValueError:
        raise CorpusParseError(f"prime column must be an integer, got {token!r}", lineno) from None
    if not is_prime(p):
        raise CorpusValidationError(f"p={p} is not prime", lineno)
    return p


def _complex(re_part, im_part):
    if is_exact(re_part, im_part):
        return re_part if im_part == 0 else GaussianRational(re_part, im_part)
    return complex(float(re_part), float(im_part))


def _split(line: str) -> list[str]:
    return [tok for tok in re.split(r"[,\s]+", line.strip()) if tok]


def _parse_header(line: str, lineno: int) -> dict:
    fields = {}
    for tok in line.split():
        if "=" not in tok:
            raise CorpusParseError(f"header token {tok!r} is not key=value", lineno)
        key, value = tok.split("=", 1)
        fields[key.strip().lower()] = value.strip()
    if "format" not in fields:
        raise CorpusParseError("header must declare format=gl3|gl2|synthetic", lineno)
    return fields


def _int_field(header, key, lineno, default=None):
    if key not in header:
        if default is None:
            raise CorpusParseError(f"header is missing {key}=", lineno)
        return default
    try:
        return int(header[key])
    except ValueError:
        raise CorpusParseError(f"{key} must be an integer", lineno) from None


def _ramified_field(header, lineno) -> frozenset:
    raw = header.get("ramified", "")
    out = set()
    for tok in filter(None, raw.split(",")):
        out.add(_prime(tok, lineno))
    return frozenset(out)


def parse_corpus(source, fmt: Optional[str] = None) -> GL3Corpus:
    """Parse a corpus from a path, a text stream or a string.

    ``fmt`` overrides the header's ``format`` field.
    """
    if isinstance(source, Path) or (isinstance(source, str) and "\n" not in source
                                    and Path(source).exists()):
        text = Path(source).read_text(encoding="utf-8")
    elif isinstance(source, str):
        text = source
    else:
        text = source.read()
    lines = io.StringIO(text).read().splitlines()

    header = None
    header_line = 0
    rows = []
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if header is None:
            header, header_line = _parse_header(line, lineno), lineno
            continue
        rows.append((lineno, _split(line)))
    if header is None:
        raise CorpusParseError("empty corpus: no header line")
    kind = (fmt or header["format"]).lower()

    seen = set()

    def check_dup(p, lineno):
        if p in seen:
            raise DuplicatePrimeError(f"duplicate prime {p}", lineno)
        seen.add(p)

    if kind == "gl2":
        weight = _int_field(header, "weight", header_line)
        level = _int_field(header, "level", header_line, default=1)
        coeffs = {}
        for lineno, toks in rows:
            if len(toks) != 2:
                raise CorpusParseError(f"gl2 rows need 2 columns, got {len(toks)}", lineno)
            p = _prime(toks[0], lineno)
            check_dup(p, lineno)
            try:
                coeffs[p] = int(toks[1])
            except ValueError:
                raise CorpusParseError(f"a_p must be an integer, got {toks[1]!r}", lineno) from None
        return lift_newform(NewformRecord(weight, level, coeffs))

    if kind == "gl3":
        ramified = _ramified_field(header, header_line)
        level = _int_field(header, "level", header_line, default=0) or None
        if level is not None:
            ramified |= {p for p in primes_upto(level) if level % p == 0}
        provenance = header.get("provenance", "file")
        decimals_exact = header.get("numbers", "exact").lower() != "float"
        data, bad = {}, {}
        for lineno, toks in rows:
            if len(toks) not in (3, 5):
                raise CorpusParseError(f"gl3 rows need 3 or 5 columns, got {len(toks)}", lineno)
            p = _prime(toks[0], lineno)
            check_dup(p, lineno)
            nums = [_number(t, lineno, decimals_exact) for t in toks[1:]]
            a_p = _complex(nums[0], nums[1])
            omega = _complex(nums[2], nums[3]) if len(nums) == 4 else 1
            if is_exact(omega):
                unit = abs2(omega) == 1
                if not unit and abs(float(abs2(omega)) - 1) <= DEFAULT_TOL:
                    omega, a_p, unit = complex(omega), complex(a_p), True
            else:
                unit = abs(abs2(omega) - 1) <= DEFAULT_TOL
            if unit:
                data[p] = HeckeLocalDatum(p, a_p, omega)
            else:
                bad[p] = (a_p, omega)
        try:
            return GL3Corpus(data, provenance, frozenset(ramified), level, bad)
        except ValueError as exc:
            raise CorpusValidationError(str(exc), header_line) from None

    if kind == "synthetic":
        data = {}
        for lineno, toks in rows:
            if len(toks) != 5:
                raise CorpusParseError(f"synthetic rows need 5 columns, got {len(toks)}", lineno)
            p = _prime(toks[0], lineno)
            check_dup(p, lineno)
            t, theta, arg_u, arg_w = (float(_number(x, lineno)) for x in toks[1:])
            if not t > 0:
                raise CorpusValidationError("t must be positive", lineno)
            gap = (arg_w - arg_u - theta) % (2 * math.pi)
            if min(gap, 2 * math.pi - gap) > 1e-9:
                raise CorpusValidationError("theta must equal arg_w - arg_u (mod 2 pi)", lineno)
            data[p] = synthetic_datum(p, t, arg_u, arg_w)
        return GL3Corpus(data, "synthetic")

    raise CorpusParseError(f"unknown format {kind!r}", header_line)


def load_corpus(path) -> GL3Corpus:
    return parse_corpus(Path(path))


def _columns(x) -> tuple[str, str]:
    if is_exact(x):
        if isinstance(x, GaussianRational):
            return str(x.re), str(x.im)
        return str(Fraction(x)), "0"
    x = complex(x)
    return repr(float(x.real)), repr(float(x.imag))


def serialize_corpus(corpus: GL3Corpus) -> str:
    """Canonical ``format=gl3`` text; exact values are written as fractions."""
    head = ["format=gl3", f"provenance={corpus.provenance}"]
    values = [v for d in corpus.data.values() for v in (d.a_p, d.omega_p)]
    values += [v for pair in corpus.inconsistent.values() for v in pair]
    if not is_exact(*values):
        head.append("numbers=float")
    if corpus.ramified:
        head.append("ramified=" + ",".join(str(p) for p in sorted(corpus.ramified)))
    if corpus.level is not None:
        head.append(f"level={corpus.level}")
    lines = ["# p Re(a_p) Im(a_p) Re(omega_p) Im(omega_p)", " ".join(head)]
    rows = {p: (d.a_p, d.omega_p) for p, d in corpus.data.items()}
    rows.update(corpus.inconsistent)
    for p in sorted(rows):
        a_p, omega = rows[p]
        lines.append(" ".join([str(p), *_columns(a_p), *_columns(omega)]))
    return "\n".join(lines) + "\n"

