from __future__ import annotations

import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from polya_engine.dense_sets import (
    DenseSet,
    calibrate_density,
    from_elements,
    next_element,
    primes_up_to,
    sieve,
    window_count,
)
from polya_engine.errors import EmptyWindow, HorizonExhausted, SpecInvalid
from polya_engine.interval import Interval

PRIMES_2000 = primes_up_to(2000)


def _trial_division_primes(n):
    return [p for p in range(2, n + 1) if all(p % d for d in range(2, math.isqrt(p) + 1))]


def test_sieve_against_trial_division():
    assert sieve(10) == [2, 3, 5, 7]
    assert len(sieve(100)) == 25
    assert sieve(1000) == _trial_division_primes(1000)
    assert len(sieve(1000)) == 168


def test_primes_up_to():
    A = primes_up_to(2000)
    assert len(A) == 303
    assert A.generator == "primes"
    assert next_element(A, 10) == 11
    assert next_element(A, 113) == 127
    with pytest.raises(HorizonExhausted):
        next_element(DenseSet((5,), 1), 5)


def test_calibration_all_integers():
    cal = calibrate_density(range(1, 3001), 0, Fraction(1, 2), (100, 3000))
    assert Fraction(1, 2) <= cal.a <= cal.b < Fraction(52, 100)


def test_calibration_primes_regression():
    cal = calibrate_density(sieve(10**4), 1, Fraction(1, 2), (100, 10**4))
    assert cal.a == Fraction("0.438054922854")
    assert cal.b == Fraction("0.585694066036")
    assert (cal.argmin_T, cal.argmax_T) == (222, 113)
    assert cal.to_json()["status"] == "calibrated on range; hypothesized beyond range"


def test_calibration_even_numbers_trend():
    cal = calibrate_density(range(2, 20001, 2), 1, Fraction(1, 2), (100, 20000))
    assert cal.trend == "increasing"
    assert cal.b_second_half > cal.b_first_half


def test_calibration_errors():
    with pytest.raises(EmptyWindow):
        calibrate_density([100], 1, Fraction(1, 2), (10, 20))
    with pytest.raises(SpecInvalid):
        calibrate_density([1, 2], 1, Fraction(3, 2), (10, 20))
    assert from_elements([100], 1, horizon=200).a is None


def test_recount_defining_property():
    els = sieve(3000)
    cal = calibrate_density(els, 1, Fraction(1, 2), (150, 3000))
    for T in range(150, 3001, 7):
        c = sum(1 for p in els if Fraction(T, 2) <= p <= T)
        t = Interval.point(T)
        dens = t / t.log()
        assert (cal.a * dens).certainly_le(c)
        assert (cal.b * dens).certainly_ge(c)


def test_dense_set_json_elides_large_lists():
    A = primes_up_to(20000)
    d = A.to_json()
    assert "elements" not in d and d["size"] == len(A)
    back = DenseSet.from_json(d)
    assert back.elements == A.elements
    small = DenseSet((3, 5, 8), 1)
    assert DenseSet.from_json(small.to_json()).elements == (3, 5, 8)


def test_dense_set_validation():
    with pytest.raises(SpecInvalid):
        DenseSet((3, 2), 1)
    with pytest.raises(SpecInvalid):
        DenseSet((0, 2), 1)


@given(st.integers(1, 1990))
def test_next_element_is_next_prime(T):
    A = PRIMES_2000
    p = next_element(A, T)
    assert p > T
    assert not any(q in A for q in range(T + 1, p))


@given(st.integers(4, 2000))
def test_window_matches_count(T):
    A = PRIMES_2000
    assert len(A.seed_window(T)) == A.count(T) == window_count(A.elements, A.epsilon, T)
