from __future__ import annotations

import json
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from polya_engine.certificates import (
    EXACT_ON_A,
    EXPONENTIAL,
    NEAR_INTEGER,
    SUBLOG,
    GrowthCertificate,
    Sample,
    SampleSeries,
    d_min,
)
from polya_engine.errors import CertificateMismatch, SpecInvalid
from polya_engine.interval import Interval, exp


def _exp_cert(**kw):
    base = dict(c_1=2, c_2=4, c_3=1, delta_prime=Fraction(1, 10), delta=Fraction(1, 5), D=3)
    base.update(kw)
    return GrowthCertificate(EXPONENTIAL, **base)


def test_d_min_below_three():
    dm = d_min()
    assert dm.certainly_lt(3)
    assert 2.386 < float(dm.lo) < 2.387


def test_certificate_validation():
    with pytest.raises(SpecInvalid):
        _exp_cert(delta_prime=Fraction(1, 4))
    with pytest.raises(SpecInvalid):
        _exp_cert(c_2=3)
    with pytest.raises(SpecInvalid):
        GrowthCertificate(SUBLOG, 2, 1, 1, eta=1, lam=1, alpha=1)
    with pytest.raises(SpecInvalid):
        GrowthCertificate("polynomial", 1, 2, 1)


def test_low_D_warns():
    assert _exp_cert(D=2).warnings()
    assert not _exp_cert().warnings()


def test_envelope_and_decay():
    cert = _exp_cert()
    assert cert.envelope(10).contains(4 * exp(2))
    assert cert.decay(2).contains(exp(-6))
    sub = GrowthCertificate(SUBLOG, 1, 2, 1, eta=1, lam=1, alpha=1)
    assert sub.rate_exponent == 4
    # floored at e^4
    assert sub.rate(3).intersect(sub.rate(exp(4))) is not None
    x = Interval.point(1000)
    assert sub.rate(1000).intersect(x / x.log() ** 4) is not None


def test_certificate_json_round_trip():
    cert = _exp_cert()
    assert GrowthCertificate.from_json(json.loads(json.dumps(cert.to_json()))) == cert
    with pytest.raises(SpecInvalid):
        GrowthCertificate.from_json({**cert.to_json(), "bogus": 1})


def test_sample_parsing():
    s = Sample.from_json({"n": 3, "v": "19/2", "m": 10})
    assert s.v == Fraction(19, 2)
    with pytest.raises(SpecInvalid):
        Sample.from_json({"n": 3, "v": "x", "m": 1})
    with pytest.raises(SpecInvalid):
        Sample.from_json({"n": 1.5, "v": "1", "m": 1})
    with pytest.raises(SpecInvalid):
        Sample.from_json({"n": 1, "m": 1})


def test_series_checks():
    good = SampleSeries(((5, Fraction(25) + Fraction(1, 10**7), 25),))
    good.check()
    bad = SampleSeries(((5, Fraction(25) + Fraction(1, 10**6), 25),))
    with pytest.raises(CertificateMismatch):
        bad.check()
    exact = SampleSeries(((2, 4, 4), (3, Fraction(9, 1), 9)), mode=EXACT_ON_A)
    exact.check()
    with pytest.raises(CertificateMismatch):
        SampleSeries(((2, Fraction(9, 2), 4),), mode=EXACT_ON_A).check()


def test_series_validation():
    with pytest.raises(SpecInvalid):
        SampleSeries(((3, 1, 1), (2, 1, 1)))
    with pytest.raises(SpecInvalid):
        SampleSeries(((1, 1, 1),), mode="fuzzy")
    with pytest.raises(SpecInvalid):
        SampleSeries.from_jsonl("\n\n")


@given(st.lists(st.tuples(st.integers(-10**6, 10**6), st.integers(0, 2**20)), min_size=1, max_size=30))
def test_jsonl_round_trip(vals):
    entries = tuple(Sample(n, Fraction(m) + Fraction(u, 2**40), m) for n, (m, u) in enumerate(vals))
    s = SampleSeries(entries, mode=NEAR_INTEGER)
    back = SampleSeries.from_jsonl(s.to_jsonl())
    assert back.entries == s.entries


@given(st.integers(1, 300), st.integers(-2**20, 2**20))
def test_decay_check_matches_exact_comparison(n, u):
    gap = Fraction(u, 2**20) * exp(-3 * n).lo_fraction
    s = SampleSeries(((n, Fraction(7) + gap, 7),))
    s.check()
