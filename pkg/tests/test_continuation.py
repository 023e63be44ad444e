from __future__ import annotations

import cmath
import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import rationals
from polya_engine.continuation import Continuation, Disk, g_enclosure
from polya_engine.errors import UnsupportedContinuation
from polya_engine.interval import exp


def test_square_on_disk():
    g = Continuation.polynomial([0, 0, 1])
    enc = g_enclosure(g, Disk(0, 3))
    assert enc.lo == 0 and enc.hi == 9


def test_exponential_on_disk():
    T = 10
    g = Continuation.exp_poly([([1], Fraction(1, 2))])
    assert g_enclosure(g, Disk(0, T)).intersect(exp(Fraction(T, 2))) is not None


def test_mixed_term_bound_dominates_samples():
    T = 8
    g = Continuation.exp_poly([([0, 1], Fraction(1, 4)), ([7], 0)])
    bound = g_enclosure(g, Disk(0, T))
    assert bound.intersect(T * exp(Fraction(T, 4)) + 7) is not None
    rng = random.Random(2)
    for _ in range(100):
        z = cmath.rect(rng.uniform(0, T), rng.uniform(0, 2 * cmath.pi))
        val = abs(z * cmath.exp(z / 4) + 7)
        assert val <= float(bound.hi)


def test_point_evaluation():
    g = Continuation.from_binomial([1, 0, 3])
    assert g.exact_value(5) == 31
    assert g_enclosure(g, 5).contains(31)
    h = Continuation.exp_poly([([1], 1)])
    assert h.exact_value(2) is None
    assert h.value(2).intersect(exp(2)) is not None


def test_json_catalogue():
    g = Continuation.exp_poly([([1, 2], Fraction(1, 3))])
    assert Continuation.from_json(g.to_json()) == g
    assert Continuation.from_json({"kind": "binomial", "coeffs": [0, 0, 1]}).exact_value(4) == 6
    assert Continuation.from_json({"kind": "polynomial", "coeffs": [1, 1]}).exact_value(4) == 5
    with pytest.raises(UnsupportedContinuation):
        Continuation.from_json({"kind": "gamma"})
    with pytest.raises(UnsupportedContinuation):
        g_enclosure("z**2", Disk(0, 1))


def test_disk_rejects_negative_radius():
    with pytest.raises(ValueError):
        Disk(0, -1)


@given(st.lists(rationals(bound=5, max_den=4), min_size=1, max_size=5), rationals(bound=3, max_den=4),
       st.integers(0, 20), st.floats(0, 1), st.floats(0, 6.28))
def test_disk_bound_dominates_points(poly, rate, R, rho, theta):
    g = Continuation.exp_poly([(poly, rate)])
    bound = g_enclosure(g, Disk(0, R))
    z = cmath.rect(rho * R, theta)
    p = sum(complex(c) * z**k for k, c in enumerate(poly))
    val = abs(p * cmath.exp(complex(rate) * z))
    assert val <= float(bound.hi) * (1 + 1e-9) + 1e-12
