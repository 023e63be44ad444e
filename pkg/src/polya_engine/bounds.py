"""Rigorous versions of the four preliminary estimates.

* :func:`binom_upper_bound` -- ``|binom(z, i)| <= e^L ((|z| + L)/L)^L`` for ``i <= L``.
* :func:`polydiff_bound` -- the difference bound for ``P(a, b) - P(a, b')``.
* :func:`tijdeman_lower_bound` -- ``prod_{i>=2} |a_1 - a_i| >= (N-1)!/2^(N-1)``.
* :func:`blaschke_rhs` -- the Jensen/Blaschke-type upper bound for ``|phi(0)|``.

In the Blaschke estimate the inner product over ``k`` excludes the summation
index ``i`` (the printed statement says ``k != n``; ``k != i`` is the only
well-formed reading and matches how the estimate is used later).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Sequence, Tuple, Union

from .errors import DuplicatePoint, LemmaHypothesisError, PointOnBoundary
from .interval import Interval, as_fraction, exp

BLASCHKE_INDEX_NOTE = (
    "Blaschke estimate: inner product taken over k != i (summation index); "
    "the printed 'k != n' is read as a typo."
)

ComplexLike = Union[int, Fraction, float, complex, Tuple[Fraction, Fraction]]


def binom_upper_bound(abs_z: Union[Interval, int, Fraction], i: int, L: int) -> Interval:
    """Enclosure of ``e^L ((|z| + L)/L)^L``; its upper end bounds ``|binom(z, i)|``.

    The expression is increasing in ``|z|``, so evaluating it on the whole
    interval ``abs_z`` covers every modulus in it.
    """
    if L < 1:
        raise LemmaHypothesisError("the binomial estimate needs L >= 1")
    if i < 0 or i > L:
        raise LemmaHypothesisError(f"binomial estimate needs 0 <= i <= L, got i={i}, L={L}")
    r = Interval.point(abs_z).clamp_nonnegative()
    return exp(L) * ((r + L) / L) ** L


def polydiff_bound(
    height: Union[Interval, int],
    L: int,
    M: int,
    binom_max: Interval,
    b: Interval,
    b_prime: Interval,
    diff: Interval,
) -> Interval:
    """``(L+1)(M+1)^2 * height * binom_max * b^M * b'^M * |b - b'|``.

    Valid for any ``P`` of the given degrees and height when ``b, b' >= 1``.
    """
    b, b_prime = Interval.point(b), Interval.point(b_prime)
    if not (b.certainly_ge(1) and b_prime.certainly_ge(1)):
        raise LemmaHypothesisError("difference bound needs b, b' >= 1")
    return (
        (L + 1)
        * (M + 1) ** 2
        * Interval.point(height)
        * Interval.point(binom_max)
        * b**M
        * b_prime**M
        * abs(Interval.point(diff))
    )


def tijdeman_lower_bound(N: int) -> Fraction:
    """``(N-1)! / 2^(N-1)``: lower bound on ``prod_{i=2..N} |a_1 - a_i|`` for distinct integers."""
    if N < 1:
        raise ValueError("need N >= 1")
    return Fraction(math.factorial(N - 1), 2 ** (N - 1))


def _as_complex_pair(a: ComplexLike) -> Tuple[Fraction, Fraction]:
    if isinstance(a, tuple):
        return as_fraction(a[0]), as_fraction(a[1])
    if isinstance(a, complex):
        return Fraction(a.real), Fraction(a.imag)
    return as_fraction(a), Fraction(0)


@dataclass(frozen=True)
class BlaschkeInstance:
    """Data of one application of the Blaschke estimate on the disk ``|z| <= R``.

    ``points`` are exact (ints, Fractions, floats converted exactly, complex,
    or ``(re, im)`` pairs of rationals).  ``phi_sup`` encloses ``|phi|_R`` and
    ``phi_values[i]`` encloses ``|phi(a_i)|``.
    """

    R: Fraction
    points: Tuple[Tuple[Fraction, Fraction], ...]
    phi_sup: Interval
    phi_values: Tuple[Interval, ...] = field(default=())

    def __init__(self, R, points: Sequence[ComplexLike], phi_sup, phi_values: Sequence = ()):
        object.__setattr__(self, "R", as_fraction(R))
        object.__setattr__(self, "points", tuple(_as_complex_pair(a) for a in points))
        object.__setattr__(self, "phi_sup", Interval.point(phi_sup).clamp_nonnegative())
        vals = tuple(Interval.point(v).clamp_nonnegative() for v in phi_values)
        object.__setattr__(self, "phi_values", vals)

    @property
    def N(self) -> int:
        return len(self.points)

    @property
    def is_real(self) -> bool:
        return all(im == 0 for _, im in self.points)

    def validate(self) -> None:
        if self.R <= 0:
            raise ValueError("radius must be positive")
        if len(self.phi_values) != len(self.points):
            raise ValueError("need one |phi(a_i)| enclosure per point")
        R2 = self.R * self.R
        for re, im in self.points:
            m2 = re * re + im * im
            if m2 == 0:
                raise ValueError("points must be nonzero")
            if m2 >= R2:
                raise PointOnBoundary(f"point {re}+{im}i has modulus >= R = {self.R}")
        if len(set(self.points)) != len(self.points):
            raise DuplicatePoint("Blaschke points must be pairwise distinct")


def _sqrt_ratio(num: int, den: int) -> Interval:
    return (Interval.point(num) / Interval.point(den)).sqrt()


def blaschke_terms(inst: BlaschkeInstance) -> Tuple[Interval, Interval, List[Interval]]:
    """The two summands of the estimate and the per-point weights.

    Returns ``(first, second, weights)`` where ``first = |phi|_R prod |a_i|/R``,
    ``weights[i] = prod_j |R^2 - a_i conj(a_j)|/R^2 * prod_{k != i} |a_k|/|a_k - a_i|``
    and ``second = sum_i |phi(a_i)| weights[i]``.  All products are formed
    exactly; only the final square roots (complex points) are enclosed.
    """
    inst.validate()
    if inst.is_real:
        return _blaschke_terms_real(inst)
    R = inst.R
    R2 = R * R
    pts = inst.points
    mod2 = [re * re + im * im for re, im in pts]
    first_sq = Fraction(1)
    for m2 in mod2:
        first_sq *= m2 / R2
    first = inst.phi_sup * _sqrt_ratio(first_sq.numerator, first_sq.denominator)
    weights = []
    for i, (xi, yi) in enumerate(pts):
        w2 = Fraction(1)
        for xj, yj in pts:
            # R^2 - a_i conj(a_j)
            re = R2 - (xi * xj + yi * yj)
            im = -(yi * xj - xi * yj)
            w2 *= (re * re + im * im) / (R2 * R2)
        for k, (xk, yk) in enumerate(pts):
            if k == i:
                continue
            dx, dy = xk - xi, yk - yi
            w2 *= mod2[k] / (dx * dx + dy * dy)
        weights.append(_sqrt_ratio(w2.numerator, w2.denominator))
    second = Interval.point(0)
    for v, w in zip(inst.phi_values, weights):
        second = second + v * w
    return first, second, weights


def _blaschke_terms_real(inst: BlaschkeInstance) -> Tuple[Interval, Interval, List[Interval]]:
    # Real points: every factor is a rational, so accumulate integer numerators
    # and denominators over a common denominator and divide once per weight.
    R = inst.R
    den = math.lcm(R.denominator, *(re.denominator for re, _ in inst.points))
    r = int(R * den)
    a = [int(re * den) for re, _ in inst.points]
    r2 = r * r
    N = len(a)
    abs_prod = 1
    for x in a:
        abs_prod *= abs(x)
    first = inst.phi_sup * (Interval.point(abs_prod) / Interval.point(r**N))
    weights = []
    for i, ai in enumerate(a):
        num = abs_prod // abs(ai)
        dnm = 1
        for k, ak in enumerate(a):
            if k != i:
                dnm *= abs(ak - ai)
        for aj in a:
            num *= abs(r2 - ai * aj)
        dnm *= r2**N
        weights.append(Interval.point(num) / Interval.point(dnm))
    second = Interval.point(0)
    for v, w in zip(inst.phi_values, weights):
        second = second + v * w
    return first, second, weights


def blaschke_rhs(inst: BlaschkeInstance) -> Interval:
    """Right-hand side of the Blaschke estimate; its upper end bounds ``|phi(0)|``."""
    first, second, _ = blaschke_terms(inst)
    return first + second


def polynomial_disk_sup(coeffs: Sequence[complex], R) -> Interval:
    """``sum |c_k| R^k``, a rigorous bound for ``sup_{|z| <= R} |sum c_k z^k|``."""
    Ri = Interval.point(as_fraction(R))
    total = Interval.point(0)
    for k, c in enumerate(coeffs):
        re, im = _as_complex_pair(c)
        mod = Interval.point(re * re + im * im).sqrt()
        total = total + mod * Ri**k
    return total
