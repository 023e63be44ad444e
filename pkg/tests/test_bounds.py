from __future__ import annotations

import itertools
import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import rationals
from polya_engine.binom_poly import BinomialPoly2, binom_eval, poly_eval_exact
from polya_engine.bounds import (
    BlaschkeInstance,
    binom_upper_bound,
    blaschke_rhs,
    blaschke_terms,
    polydiff_bound,
    polynomial_disk_sup,
    tijdeman_lower_bound,
)
from polya_engine.errors import DuplicatePoint, LemmaHypothesisError, PointOnBoundary
from polya_engine.interval import Interval, exp


def test_binom_upper_bound_examples():
    assert binom_upper_bound(0, 0, 1).certainly_ge(1)
    b = binom_upper_bound(10, 3, 3)
    expected = exp(3) * Interval.point(Fraction(13, 3)) ** 3
    assert b.intersect(expected) is not None
    assert 1634.36 < float(b.lo) <= float(b.hi) < 1634.37
    assert b.certainly_ge(120)


def test_binom_upper_bound_at_twice_T():
    L, M = 5, 1
    T = (L + 1) * (M + 1)
    closed = exp(2 * L) * Interval.point(M + 4) ** L
    for i in range(L + 1):
        assert binom_upper_bound(2 * T, i, L).hi <= closed.lo


def test_binom_upper_bound_rejects_bad_index():
    with pytest.raises(LemmaHypothesisError):
        binom_upper_bound(3, 4, 3)
    with pytest.raises(LemmaHypothesisError):
        binom_upper_bound(3, 0, 0)


@given(rationals(bound=100, max_den=30), st.data())
def test_binom_upper_bound_dominates(z, data):
    L = data.draw(st.integers(1, 20))
    i = data.draw(st.integers(0, L))
    assert binom_upper_bound(abs(z), i, L).certainly_ge(abs(binom_eval(z, i)))


def test_polydiff_zero_difference():
    b = polydiff_bound(3, 2, 1, Interval.point(5), Interval.point(2), Interval.point(2), Interval.point(0))
    assert b.contains(0)


def test_polydiff_exhaustive_small_case():
    bound = polydiff_bound(1, 0, 1, Interval.point(1), Interval.point(2), Interval.point(1), Interval.point(1))
    assert bound.lo == 8 and bound.hi == 8
    worst = 0
    for p00, p01 in itertools.product((-1, 0, 1), repeat=2):
        P = BinomialPoly2(0, 1, {(0, 0): p00, (0, 1): p01})
        worst = max(worst, abs(poly_eval_exact(P, 0, 2) - poly_eval_exact(P, 0, 1)))
    assert worst == 1 <= bound.hi


def test_polydiff_specialization():
    # height from the Siegel bound, |f(n)|, |m_n| <= c_2 e^(delta T), |f(n) - m_n| <= e^(-D T / 2)
    L, M = 5, 1
    T = (L + 1) * (M + 1)
    c2, delta, D = Fraction(7), Fraction(1, 100), Fraction(3)
    growth = Interval.point(c2) * Interval.point(delta * T).exp()
    height = (L + 1) * (M + 1) * exp(L) * Interval.point(M + 4) ** L * Interval.point(c2) ** M * Interval.point(
        delta * M * T
    ).exp()
    generic = polydiff_bound(
        height, L, M, binom_upper_bound(T, L, L), growth, growth, Interval.point(-D * T / 2).exp()
    )
    special = (
        Interval.point(T) ** 3
        * Interval.point(c2) ** (3 * M)
        * exp(2 * L)
        * Interval.point(M + 4) ** (2 * L)
        * Interval.point(3 * delta * M * T - D * T / 2).exp()
    )
    assert generic.hi <= special.lo


def test_polydiff_needs_b_at_least_one():
    with pytest.raises(LemmaHypothesisError):
        polydiff_bound(1, 1, 1, Interval.point(1), Interval.point(Fraction(1, 2)), Interval.point(1), Interval.point(1))


@given(
    st.dictionaries(st.tuples(st.integers(0, 3), st.integers(0, 2)), st.integers(-9, 9), max_size=8),
    st.integers(0, 30),
    st.integers(1, 40),
    st.integers(1, 40),
)
def test_polydiff_dominates_random_polynomials(coeffs, n, b, b_prime):
    L, M = 3, 2
    P = BinomialPoly2(L, M, coeffs)
    diff = abs(poly_eval_exact(P, n, b) - poly_eval_exact(P, n, b_prime))
    binom_max = Interval.point(max(math.comb(n, i) for i in range(L + 1)))
    bound = polydiff_bound(
        max(P.height, 1), L, M, binom_max, Interval.point(max(b, b_prime)), Interval.point(max(b, b_prime)),
        Interval.point(b - b_prime),
    )
    assert bound.certainly_ge(diff)


def test_tijdeman_values():
    assert tijdeman_lower_bound(1) == 1
    assert tijdeman_lower_bound(5) == Fraction(3, 2)
    assert tijdeman_lower_bound(6) == Fraction(15, 4)


def test_tijdeman_random_draws():
    rng = random.Random(5)
    bound = tijdeman_lower_bound(6)
    for _ in range(1000):
        a = rng.sample(range(-1000, 1000), 6)
        prod = math.prod(abs(a[0] - x) for x in a[1:])
        assert prod >= bound


def test_blaschke_examples():
    R = Fraction(4)
    # phi(z) = z, one point at R/2
    rhs = blaschke_rhs(BlaschkeInstance(R, [R / 2], Interval.point(R), [Interval.point(R / 2)]))
    assert rhs.certainly_gt(0)
    # phi constant c
    c = Fraction(3)
    rhs = blaschke_rhs(BlaschkeInstance(R, [R / 2], Interval.point(c), [Interval.point(c)]))
    assert rhs.contains(Fraction(5, 4) * c)
    # phi = (z - 1)(z + 1) on |z| <= 2
    sup = polynomial_disk_sup([-1, 0, 1], 2)
    assert sup.hi <= 9
    first, second, _ = blaschke_terms(BlaschkeInstance(2, [1, -1], sup, [0, 0]))
    assert second.hi == 0
    assert first.certainly_ge(1) and first.hi_fraction <= Fraction(9, 4)


def test_blaschke_real_and_complex_paths_agree():
    pts = [Fraction(1, 3), Fraction(-5, 4), Fraction(2)]
    real = blaschke_terms(BlaschkeInstance(3, pts, 10, [1, 2, 3]))
    cplx = blaschke_terms(BlaschkeInstance(3, [(p, Fraction(0)) for p in pts[:-1]] + [(pts[-1], Fraction(0))], 10, [1, 2, 3]))
    for a, b in zip(real[2], cplx[2]):
        assert a.intersect(b) is not None


def test_blaschke_rejects_bad_points():
    with pytest.raises(PointOnBoundary):
        blaschke_rhs(BlaschkeInstance(2, [2], 1, [1]))
    with pytest.raises(DuplicatePoint):
        blaschke_rhs(BlaschkeInstance(2, [1, 1], 1, [1, 1]))


def _poly_value(coeffs, z):
    acc = 0j
    for c in reversed(coeffs):
        acc = acc * z + c
    return acc


@given(
    st.lists(st.integers(-8, 8), min_size=1, max_size=9),
    st.lists(st.tuples(st.integers(-9, 9), st.integers(-9, 9)), min_size=1, max_size=6, unique=True),
)
def test_blaschke_estimate_holds(coeffs, raw_points):
    # points in the disk of radius R/2 with R = 10
    R = 10
    pts = [(Fraction(x, 2), Fraction(y, 2)) for x, y in raw_points if 0 < x * x + y * y <= 99]
    if not pts:
        return
    sup = polynomial_disk_sup(coeffs, R)
    vals = []
    for re, im in pts:
        v = _poly_value([Fraction(c) for c in coeffs], complex(re, im))
        vals.append(Interval.point(Fraction(abs(v))) * Interval.from_bounds(Fraction(1) - Fraction(1, 10**9), Fraction(1) + Fraction(1, 10**9)))
    rhs = blaschke_rhs(BlaschkeInstance(R, pts, sup, vals))
    assert rhs.certainly_ge(abs(coeffs[0]))
