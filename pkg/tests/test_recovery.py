from __future__ import annotations

import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from polya_engine.binom_poly import eval_binomial_univariate
from polya_engine.dense_sets import sieve
from polya_engine.errors import NoPolynomialFit, SequenceTooShort, VerificationFailed
from polya_engine.recovery import (
    RecoveredPolynomial,
    finite_differences,
    from_monomial,
    integrality_check,
    recover,
    recover_dense,
    verify,
)

PRIMES = sieve(2000)


def test_finite_differences_examples():
    assert finite_differences([n * n for n in range(6)], 3) == [0, 0, 0]
    assert finite_differences([math.comb(n, 3) for n in range(7)], 3) == [1, 1, 1, 1]
    pw = [2**n for n in range(7)]
    for k in range(1, 6):
        assert finite_differences(pw, k) == pw[: len(pw) - k]
    with pytest.raises(SequenceTooShort):
        finite_differences([1, 2], 2)


def test_recover_squares():
    Q = recover([(n, n * n) for n in range(30)])
    assert Q.degree == 2 and Q.binom_coeffs == (0, 1, 2)
    for n in range(11):
        assert Q(n) == n * n


def test_recover_constant():
    Q = recover([(n, 7) for n in range(1, 30)])
    assert Q.degree == 0 and Q.binom_coeffs == (7,)


def test_recover_after_rounding_noise():
    rng = random.Random(4)
    pts = []
    for n in range(0, 40):
        v = math.exp(-3 * n) * rng.random() + n**3
        pts.append((n, round(v)))
    Q = recover(pts)
    assert Q.degree == 3
    assert Q.monomial() == [0, 0, 0, 1]


def test_recover_tail_after_junk():
    pts = [(n, 999 if n < 5 else 3 * n + 1) for n in range(40)]
    Q = recover(pts)
    assert Q.tail_start == 5 and Q.binom_coeffs == (1, 3)


def test_rejections():
    with pytest.raises(NoPolynomialFit):
        recover([(n, 2**n) for n in range(60)], max_degree=12)
    fib = [0, 1]
    while len(fib) < 60:
        fib.append(fib[-1] + fib[-2])
    with pytest.raises(NoPolynomialFit):
        recover(list(enumerate(fib)), max_degree=12)
    with pytest.raises(SequenceTooShort):
        recover([(n, n) for n in range(5)])


def test_verification_failure_on_late_violation():
    pts = [(n, n) for n in range(60)]
    pts[50] = (50, 51)
    with pytest.raises(VerificationFailed):
        recover(pts, stability_window=10)


def test_integrality():
    assert integrality_check(RecoveredPolynomial(2, (0, 0, 1), 0))
    q = from_monomial([0, Fraction(1, 2), Fraction(1, 2)])
    assert q.binom_coeffs == (0, 1, 1) and integrality_check(q)
    half = from_monomial([0, Fraction(1, 2)])
    assert not integrality_check(half) and half.int_coeffs() is None


def test_json_round_trip():
    Q = RecoveredPolynomial(3, (1, -2, 0, 5), 4)
    d = Q.to_json()
    assert d == {"degree": 3, "binom_coeffs": ["1", "-2", "0", "5"], "tail_start": 4}
    assert RecoveredPolynomial.from_json(d).binom_coeffs == Q.binom_coeffs


def test_verify_counts():
    Q = RecoveredPolynomial(1, (0, 1), 3)
    assert verify(Q, [(n, n) for n in range(10)]) == 7


@given(st.lists(st.integers(-100, 100), min_size=1, max_size=9).filter(lambda q: q[-1] != 0 or len(q) == 1))
def test_round_trip_consecutive(q):
    pts = [(n, int(eval_binomial_univariate(q, n))) for n in range(0, 40)]
    Q = recover(pts, max_degree=8)
    assert list(Q.binom_coeffs) == q


@given(st.lists(st.integers(-100, 100), min_size=1, max_size=9).filter(lambda q: q[-1] != 0 or len(q) == 1))
def test_round_trip_primes(q):
    pts = [(p, int(eval_binomial_univariate(q, p))) for p in PRIMES[:60]]
    Q = recover_dense(pts, max_degree=8)
    assert list(Q.binom_coeffs) == q
