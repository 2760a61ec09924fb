import cmath
import io
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ramanujan_primes.errors import (
    CorpusParseError,
    CorpusValidationError,
    DuplicatePrimeError,
)
from ramanujan_primes.exact import GaussianRational, primes_upto
from ramanujan_primes.ingest import (
    GL3Corpus,
    NewformRecord,
    delta_coefficients,
    delta_newform,
    delta_qexpansion,
    lift_newform,
    load_corpus,
    normalize_gl2,
    normalized_square,
    parse_corpus,
    serialize_corpus,
    sym_square_datum,
    synthetic_corpus,
    synthetic_datum,
)
from ramanujan_primes.satake import Temperedness, UnitaryClass3, class_of, classify

from conftest import naive_tau


class TestDelta:
    def test_small_values(self):
        tau = delta_qexpansion(7)
        assert tau == {2: -24, 3: 252, 5: 4830, 7: -16744}

    def test_against_naive_product(self, tau_small):
        assert delta_coefficients(60) == tau_small

    def test_against_naive_product_longer(self):
        assert delta_coefficients(300) == naive_tau(300)

    def test_multiplicativity(self):
        tau = delta_coefficients(1000)
        for m, n in ((2, 3), (3, 5), (4, 25), (7, 11), (8, 125)):
            assert tau[m * n] == tau[m] * tau[n]
        for p in (2, 3, 5):
            assert tau[p ** 3] == tau[p] * tau[p ** 2] - p ** 11 * tau[p]

    def test_deligne_bound_exact(self):
        assert all(delta_newform(1000).deligne_flags().values())

    def test_limit(self):
        with pytest.raises(ValueError):
            delta_coefficients(10 ** 6)


class TestNormalization:
    def test_lambda_squared(self):
        assert normalized_square(-24, 2, 12) == Fraction(9, 32)
        assert normalized_square(252, 3, 12) == Fraction(784, 2187)

    def test_float_normalization(self):
        assert normalize_gl2(-24, 2, 12) ** 2 == pytest.approx(9 / 32, rel=1e-14)

    def test_sym_square_datum(self):
        assert sym_square_datum(Fraction(9, 32), 2).a_p == Fraction(-23, 32)
        assert sym_square_datum(4, 3).a_p == 3
        d = sym_square_datum(0, 5)
        assert d.a_p == -1
        assert classify(class_of(d)).verdict is Temperedness.TEMPERED
        with pytest.raises(ValueError):
            sym_square_datum(-1, 2)

    @settings(max_examples=200, deadline=None)
    @given(st.floats(0.0, 2.0))
    def test_lift_is_beta_one_beta_inverse(self, lam):
        beta = complex(lam / 2, math.sqrt(max(0.0, 1 - lam * lam / 4)))
        d = sym_square_datum(lam * lam, 7)
        expected = UnitaryClass3((beta ** 2, 1, beta ** -2))
        assert class_of(d).same_multiset(expected, 1e-6)


class TestLift:
    def test_delta_lift_exact(self):
        corpus = lift_newform(delta_newform(200))
        assert corpus.provenance == "lifted-from-newform"
        assert corpus.primes() == primes_upto(200)
        assert all(isinstance(d.a_p, Fraction) and d.omega_p == 1 for d in corpus.data.values())
        assert corpus.data[2].a_p == Fraction(-23, 32)

    def test_level_primes_ramified(self):
        corpus = lift_newform(NewformRecord(2, 11, {2: -2, 3: -1, 5: 1, 11: 1}))
        assert corpus.ramified == {11}
        assert 11 not in corpus.data

    def test_bad_weight(self):
        for k in (1, 3, 0):
            with pytest.raises(CorpusValidationError):
                NewformRecord(k, 1, {})

    def test_restrict(self):
        corpus = lift_newform(delta_newform(100))
        assert corpus.restrict(10).primes() == [2, 3, 5, 7]

    def test_ramified_must_cover_level(self):
        with pytest.raises(CorpusValidationError):
            GL3Corpus({}, "file", frozenset(), 6)

    def test_unknown_provenance(self):
        with pytest.raises(ValueError):
            GL3Corpus({}, "oracle")


class TestSynthetic:
    def test_classes_nontempered(self):
        for p, d in synthetic_corpus(50, t=0.3, theta=1.0).data.items():
            res = classify(class_of(d))
            assert res.verdict is Temperedness.NON_TEMPERED
            assert res.shape.t == pytest.approx(0.3, abs=1e-9)
            assert cmath.exp(1j * res.shape.theta) == pytest.approx(cmath.exp(1j), abs=1e-9)

    def test_datum_unit_omega(self):
        d = synthetic_datum(5, 0.2, 0.7, -1.1)
        assert abs(abs(d.omega_p) - 1) < 1e-15


GL3_TEXT = """\
# a comment
format=gl3 ramified=7

2  -23/32  0
3  -1403/2187 0 1 0
5  0.25, -0.5, 0, 1
"""


class TestParse:
    def test_gl3_exact(self):
        corpus = parse_corpus(GL3_TEXT)
        assert corpus.ramified == {7}
        assert corpus.data[2].a_p == Fraction(-23, 32)
        assert corpus.data[5].a_p == GaussianRational(Fraction(1, 4), Fraction(-1, 2))
        assert corpus.data[5].omega_p == GaussianRational(0, 1)
        assert all(d.exact for d in corpus.data.values())

    def test_gl3_float_mode(self):
        corpus = parse_corpus("format=gl3 numbers=float\n2 0.1 0.2\n3 1/3 0\n")
        assert isinstance(corpus.data[2].a_p, complex)
        assert corpus.data[3].a_p == Fraction(1, 3)

    def test_gl3_level_adds_ramified(self):
        corpus = parse_corpus("format=gl3 level=15\n2 0 0\n7 1 0\n")
        assert corpus.ramified == {3, 5}

    def test_inconsistent_row_recorded(self):
        corpus = parse_corpus("format=gl3\n2 0 0 2 0\n3 0 0\n")
        assert 2 in corpus.inconsistent and 2 not in corpus.data
        assert corpus.primes() == [2, 3]

    def test_gl2(self):
        corpus = parse_corpus("format=gl2 weight=12\n2 -24\n3 252\n")
        assert corpus.data[2].a_p == Fraction(-23, 32)
        assert corpus.data[3].a_p == Fraction(784, 2187) - 1
        assert corpus.provenance == "lifted-from-newform"

    def test_synthetic_pi_tokens(self):
        corpus = parse_corpus("format=synthetic\n2 0.5 π 0 π\n3 0.25 -pi/2 pi/2 0\n")
        res = classify(class_of(corpus.data[2]))
        assert res.shape.t == pytest.approx(0.5, abs=1e-10)
        assert res.shape.theta == pytest.approx(math.pi, abs=1e-10)
        assert abs(corpus.data[2].a_p - (math.sqrt(2) + 1 / math.sqrt(2) - 1)) < 1e-12

    def test_stream_and_path(self, tmp_path):
        path = tmp_path / "c.txt"
        path.write_text(GL3_TEXT, encoding="utf-8")
        assert load_corpus(path).data == parse_corpus(io.StringIO(GL3_TEXT)).data
        assert parse_corpus(str(path)).data == parse_corpus(GL3_TEXT).data

    @pytest.mark.parametrize("text, exc, lineno", [
        ("format=gl3\n4 0 0\n", CorpusValidationError, 2),
        ("format=gl3\n2 0 0\n3 0 0\n2 1 0\n", DuplicatePrimeError, 4),
        ("format=gl3\n2 0\n", CorpusParseError, 2),
        ("format=gl3\n2 0 0\n\n3 x 0\n", CorpusParseError, 4),
        ("format=gl2\n2 -24\n", CorpusParseError, 1),
        ("format=gl2 weight=12\n2 1.5\n", CorpusParseError, 2),
        ("format=gl2 weight=3\n2 1\n", CorpusValidationError, 0),
        ("format=synthetic\n2 0 0 0 0\n", CorpusValidationError, 2),
        ("format=synthetic\n2 0.5 1 0 0\n", CorpusValidationError, 2),
        ("p=2 a=1\n", CorpusParseError, 1),
        ("format=gl5\n2 1\n", CorpusParseError, 1),
        ("# only comments\n", CorpusParseError, 0),
    ])
    def test_errors(self, text, exc, lineno):
        with pytest.raises(exc) as info:
            parse_corpus(text)
        assert info.value.lineno == lineno


class TestRoundTrip:
    def test_exact(self):
        corpus = parse_corpus(GL3_TEXT)
        again = parse_corpus(serialize_corpus(corpus))
        assert again.data == corpus.data and again.ramified == corpus.ramified

    def test_delta(self):
        corpus = lift_newform(delta_newform(300))
        again = parse_corpus(serialize_corpus(corpus))
        assert again.data == corpus.data
        assert again.provenance == corpus.provenance

    def test_float(self):
        corpus = synthetic_corpus(100, t=0.3, theta=2.0)
        again = parse_corpus(serialize_corpus(corpus))
        assert again.data == corpus.data

    def test_inconsistent_preserved(self):
        corpus = parse_corpus("format=gl3\n2 0 0 2 0\n3 0 0\n")
        again = parse_corpus(serialize_corpus(corpus))
        assert again.inconsistent.keys() == {2}
