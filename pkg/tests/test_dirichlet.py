import math
import random
from fractions import Fraction

import numpy as np
import pytest

from ramanujan_primes.adjoint import local_factor_adjoint
from ramanujan_primes.dirichlet import (
    LogDirichletSeries,
    build_adjoint_log_series,
    evaluate_incomplete,
    positive_type_scan,
    witness_report,
)
from ramanujan_primes.errors import DomainError, IncompleteDataError
from ramanujan_primes.exact import primes_upto
from ramanujan_primes.ingest import delta_newform, lift_newform, synthetic_corpus
from ramanujan_primes.satake import HeckeLocalDatum, class_of, datum_from_class, random_class


@pytest.fixture(scope="module")
def delta_corpus():
    return lift_newform(delta_newform(1000))


def zero_trace_corpus(p_max):
    return [HeckeLocalDatum(p, 0, 1) for p in primes_upto(p_max)]


class TestBuild:
    def test_delta_entry(self, delta_corpus):
        series = build_adjoint_log_series(delta_corpus, (), (10, 2))
        assert series.entries[(2, 1)] == Fraction(-495, 1024)
        assert set(series.entries) == {(p, m) for p in (2, 3, 5, 7) for m in (1, 2)}

    def test_zero_trace(self):
        series = build_adjoint_log_series(zero_trace_corpus(50), (), (50, 3))
        assert all(series.entries[(p, 1)] == -1 for p in primes_upto(50))

    def test_nontempered_all_positive(self):
        series = build_adjoint_log_series(synthetic_corpus(200, t=0.25, theta=0.0), (), (200, 4))
        assert all(c > 0 for c in series.entries.values())

    def test_excluded_primes_absent(self, delta_corpus):
        series = build_adjoint_log_series(delta_corpus, {2, 5}, (20, 2))
        assert all(p not in (2, 5) for p, _ in series.entries)
        assert {2, 5, "inf"} <= series.excluded

    def test_missing_prime_named(self):
        data = [d for d in zero_trace_corpus(30) if d.p != 13]
        with pytest.raises(IncompleteDataError, match="13"):
            build_adjoint_log_series(data, (), (30, 1))
        series = build_adjoint_log_series(data, {13}, (30, 1))
        assert (13, 1) not in series.entries

    def test_ramified_primes_excluded(self):
        corpus = lift_newform(delta_newform(50))
        ramified = type(corpus)(dict(corpus.data), corpus.provenance, frozenset({3}))
        series = build_adjoint_log_series(ramified, (), (50, 1))
        assert 3 in series.excluded and (3, 1) not in series.entries


class TestScan:
    def test_delta_first_negative(self, delta_corpus):
        rep = positive_type_scan(build_adjoint_log_series(delta_corpus, (), (1000, 3)))
        assert not rep.is_positive_type
        assert rep.first_negative == (2, 1, Fraction(-495, 1024))
        assert rep.scanned == 168 * 3

    def test_synthetic_positive(self):
        rep = positive_type_scan(build_adjoint_log_series(synthetic_corpus(300), (), (300, 5)))
        assert rep.is_positive_type and rep.first_negative is None and rep.negative_count == 0

    def test_empty_series_vacuous(self, delta_corpus):
        series = build_adjoint_log_series(delta_corpus, primes_upto(30), (30, 3))
        rep = positive_type_scan(series)
        assert rep.is_positive_type and rep.scanned == 0

    def test_order_independence(self, delta_corpus):
        series = build_adjoint_log_series(delta_corpus, (), (200, 3))
        items = list(series.entries.items())
        random.Random(3).shuffle(items)
        shuffled = LogDirichletSeries(dict(items), series.excluded, series.window)
        a, b = positive_type_scan(series), positive_type_scan(shuffled)
        assert a == b

    def test_monotone_in_excluded_set(self, delta_corpus):
        base = positive_type_scan(build_adjoint_log_series(delta_corpus, (), (200, 3)))
        negatives = {(p, m) for (p, m), c in
                     build_adjoint_log_series(delta_corpus, (), (200, 3)).entries.items() if c < 0}
        for S in ({2}, {2, 3, 5}, set(primes_upto(100))):
            rep = positive_type_scan(build_adjoint_log_series(delta_corpus, S, (200, 3)))
            assert rep.negative_count <= base.negative_count
            if rep.first_negative is not None:
                assert rep.first_negative[:2] in negatives

    def test_vacuous_positivity_random_nontempered(self, rng):
        data = [datum_from_class(random_class(rng, p, kind="nontempered")) for p in primes_upto(400)]
        for window in ((50, 1), (400, 10)):
            assert positive_type_scan(build_adjoint_log_series(data, (), window)).is_positive_type


class TestEvaluate:
    def test_empty_series(self):
        series = build_adjoint_log_series([], (), (1, 3))
        res = evaluate_incomplete(series, 3.0)
        assert res.value == 1.0 and res.tail_bound >= 0

    def test_single_entry(self):
        series = LogDirichletSeries({(2, 1): 8}, frozenset({"inf"}), (2, 1))
        assert evaluate_incomplete(series, 3).value == pytest.approx(math.e, rel=1e-15)

    def test_delta_below_one(self, delta_corpus):
        res = evaluate_incomplete(build_adjoint_log_series(delta_corpus, (), (100, 5)), 3)
        assert 0 < res.value < 1
        assert res.tail_bound >= 0

    def test_domain(self):
        series = build_adjoint_log_series([], (), (1, 1))
        for s in (2.0, 1.5, -1.0):
            with pytest.raises(DomainError):
                evaluate_incomplete(series, s)

    @pytest.mark.parametrize("seed", range(5))
    def test_matches_direct_product(self, seed):
        rng = np.random.default_rng(seed)
        p_max = 60
        data = {p: datum_from_class(random_class(rng, p)) for p in primes_upto(p_max)}
        for m_max in (2, 6):
            series = build_adjoint_log_series(data, (), (p_max, m_max))
            res = evaluate_incomplete(series, 3.0)
            direct = 1.0
            for p, d in data.items():
                direct *= local_factor_adjoint(class_of(d), 3.0).real
            assert abs(res.value - direct) <= 1e-10 + res.tail_bound

    def test_tail_bound_shrinks_with_window(self, delta_corpus):
        small = evaluate_incomplete(build_adjoint_log_series(delta_corpus, (), (50, 2)), 3)
        large = evaluate_incomplete(build_adjoint_log_series(delta_corpus, (), (500, 6)), 3)
        assert large.tail_bound < small.tail_bound

    def test_order_independent_value(self, delta_corpus):
        series = build_adjoint_log_series(delta_corpus, (), (300, 3))
        items = list(series.entries.items())
        random.Random(1).shuffle(items)
        shuffled = LogDirichletSeries(dict(items), series.excluded, series.window, series.radius_sq)
        assert evaluate_incomplete(series, 4).value == evaluate_incomplete(shuffled, 4).value


class TestWitnessReport:
    def test_delta(self, delta_corpus):
        rep = witness_report(delta_corpus, (), (1000, 3))
        assert 2 in rep.primes()
        assert rep.witnesses[0] == (2, 1, Fraction(-495, 1024))
        assert rep.scanned == 168
        assert rep.density > 0.9
        assert 0 <= rep.density <= 1

    def test_nontempered_none(self):
        rep = witness_report(synthetic_corpus(200), (), (200, 5))
        assert rep.count == 0 and rep.density == 0

    def test_zero_trace_all(self):
        rep = witness_report(zero_trace_corpus(100), (), (100, 2))
        assert rep.count == rep.scanned == 25
        assert all(m == 1 for _, m, _ in rep.witnesses)
