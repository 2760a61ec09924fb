"""Embedded invariant suite run by ``ramanujan selftest``."""

from __future__ import annotations

import math

import numpy as np

from . import satake
from .adjoint import (
    adjoint_class,
    adjoint_coefficients,
    local_factor_adjoint,
    local_factor_rankin,
    local_zeta,
)
from .exact import first_primes
from .ingest import delta_newform, lift_newform
from .satake import (
    HeckeLocalDatum,
    Temperedness,
    classify,
    datum_from_class,
    elementary_symmetrics,
    random_class,
    roots_oracle,
)


def _corrupt_power_traces(e1, e2, e3, M):
    t = list(satake.power_traces(e1, e2, e3, M))
    if M >= 2:
        t[1] = e1 * t[0] + 2 * e2  # wrong sign
    return tuple(t)


def run_selftest(seed: int = 0, trials: int = 200, corrupt: bool = False) -> dict:
    """Run every check on seeded random data.

    Returns a report with one entry per check; each failure records the
    seed and trial index needed to reproduce it.
    """
    traces = _corrupt_power_traces if corrupt else satake.power_traces
    primes = first_primes(100)
    checks = {}

    def record(name, failures, n):
        checks[name] = {"trials": n, "failures": failures[:10], "failed": len(failures)}

    rng = np.random.default_rng([seed, 1])
    fails = []
    for i in range(trials):
        c = random_class(rng, primes[rng.integers(len(primes))])
        t = traces(*elementary_symmetrics(datum_from_class(c)), 12)
        oracle = roots_oracle(*elementary_symmetrics(datum_from_class(c)))
        for m, tm in enumerate(t, start=1):
            direct = oracle.power_sum(m)
            if abs(tm - direct) > 1e-10 * max(1.0, sum(abs(a) ** m for a in oracle.alphas)):
                fails.append({"seed": seed, "trial": i, "m": m})
                break
    record("newton-vs-oracle", fails, trials)

    rng = np.random.default_rng([seed, 2])
    fails = []
    for i in range(trials):
        c = random_class(rng, primes[rng.integers(len(primes))])
        for s in (1.5, 2.0, 3.0):
            r = local_factor_rankin(c, s)
            if abs(r - local_zeta(c.p, s) * local_factor_adjoint(c, s)) > 1e-12 * abs(r):
                fails.append({"seed": seed, "trial": i, "s": s})
                break
    record("rankin-factorization", fails, trials)

    rng = np.random.default_rng([seed, 3])
    fails = []
    for i in range(trials):
        c = random_class(rng, primes[rng.integers(len(primes))], kind="nontempered")
        d = datum_from_class(c)
        e = elementary_symmetrics(d)
        ts = traces(*e, 20)
        shape = classify(c).shape
        for m, tm in enumerate(ts, start=1):
            coeff = abs(tm) ** 2 - 1
            x = c.p ** (m * shape.t) + c.p ** (-m * shape.t)
            closed = 2 + c.p ** (2 * m * shape.t) + c.p ** (-2 * m * shape.t) \
                + 2 * math.cos(m * shape.theta) * x
            if not coeff > 0 or abs(coeff - closed) > 1e-10 * max(1.0, closed):
                fails.append({"seed": seed, "trial": i, "m": m})
                break
    record("local-positivity", fails, trials)

    fails = []
    corpus = lift_newform(delta_newform(200))
    for p, d in sorted(corpus.data.items()):
        c = roots_oracle(*elementary_symmetrics(d), p=p)
        has_one = min(abs(complex(a) - 1) for a in c.alphas) <= 1e-9
        if classify(c).verdict is not Temperedness.TEMPERED or not has_one:
            fails.append({"p": p})
            continue
        if abs(adjoint_coefficients(d, 1)[0] - (float(d.a_p) ** 2 - 1)) > 1e-12:
            fails.append({"p": p, "check": "coefficient"})
    record("sym2-lift", fails, len(corpus.data))

    fails = []
    extreme = HeckeLocalDatum(2, 3, 1)
    if abs(adjoint_class(roots_oracle(*elementary_symmetrics(extreme), p=2)).trace() - 8) > 1e-12:
        fails.append({"case": "class {1,1,1}"})
    record("fixed-cases", fails, 1)

    ok = all(v["failed"] == 0 for v in checks.values())
    return {"seed": seed, "trials": trials, "ok": ok, "checks": checks}
