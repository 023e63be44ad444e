"""Explicit analytic continuations ``g`` and rigorous bounds for them.

Supported catalogue: finite sums ``sum_i f_i(z) e^(s_i z)`` with rational
polynomial ``f_i`` and rational rates ``s_i`` (polynomials are the case of a
single zero rate).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Tuple, Union

from .binom_poly import binomial_to_monomial
from .errors import UnsupportedContinuation
from .interval import Interval, as_fraction


@dataclass(frozen=True)
class ExpPolyTerm:
    poly: Tuple[Fraction, ...]  # monomial coefficients, lowest degree first
    rate: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        object.__setattr__(self, "poly", tuple(as_fraction(c) for c in self.poly))
        object.__setattr__(self, "rate", as_fraction(self.rate))


@dataclass(frozen=True)
class Continuation:
    terms: Tuple[ExpPolyTerm, ...]

    @classmethod
    def polynomial(cls, coeffs: Sequence) -> "Continuation":
        return cls((ExpPolyTerm(tuple(coeffs)),))

    @classmethod
    def from_binomial(cls, q: Sequence) -> "Continuation":
        """The polynomial ``sum q[k] binom(z, k)``."""
        return cls.polynomial(binomial_to_monomial(q))

    @classmethod
    def exp_poly(cls, terms: Sequence[Tuple[Sequence, object]]) -> "Continuation":
        return cls(tuple(ExpPolyTerm(tuple(p), r) for p, r in terms))

    def to_json(self) -> dict:
        return {
            "kind": "exp-poly",
            "terms": [{"poly": [str(c) for c in t.poly], "rate": str(t.rate)} for t in self.terms],
        }

    @classmethod
    def from_json(cls, d: dict) -> "Continuation":
        kind = d.get("kind")
        if kind == "polynomial":
            return cls.polynomial(d["coeffs"])
        if kind == "binomial":
            return cls.from_binomial(d["coeffs"])
        if kind == "exp-poly":
            return cls.exp_poly([(t["poly"], t.get("rate", 0)) for t in d["terms"]])
        raise UnsupportedContinuation(f"continuation kind {kind!r} is not in the catalogue")

    @property
    def is_polynomial(self) -> bool:
        return all(t.rate == 0 for t in self.terms)

    def exact_value(self, x) -> Optional[Fraction]:
        """``g(x)`` as a rational when ``g`` is a polynomial, else None."""
        if not self.is_polynomial:
            return None
        x = as_fraction(x)
        total = Fraction(0)
        for t in self.terms:
            p = Fraction(0)
            for c in reversed(t.poly):
                p = p * x + c
            total += p
        return total

    def value(self, x) -> Interval:
        """Enclosure of ``g(x)`` at a real point."""
        x = as_fraction(x)
        total = Interval.point(0)
        for t in self.terms:
            p = Fraction(0)
            for c in reversed(t.poly):
                p = p * x + c
            if t.rate:
                total = total + p * Interval.point(t.rate * x).exp()
            else:
                total = total + Interval.point(p)
        return total


@dataclass(frozen=True)
class Disk:
    """Closed disk with real center; radius 0 is a single real point."""

    center: Fraction
    radius: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        object.__setattr__(self, "center", as_fraction(self.center))
        object.__setattr__(self, "radius", as_fraction(self.radius))
        if self.radius < 0:
            raise ValueError("radius must be nonnegative")


def _coerce_spec(spec) -> Continuation:
    if isinstance(spec, Continuation):
        return spec
    if isinstance(spec, dict):
        return Continuation.from_json(spec)
    raise UnsupportedContinuation(f"cannot bound a continuation given as {type(spec).__name__}")


def g_enclosure(spec: Union[Continuation, dict], where: Union[Disk, int, Fraction]) -> Interval:
    """Enclosure of ``|g|`` at a real point, or ``[0, sup]`` over a disk.

    On a disk ``|z - c| <= r`` each term is bounded separately:
    ``|f_i(z)| <= sum |a_k| (|c| + r)^k`` and ``|e^(s z)| <= e^(max(s(c-r), s(c+r)))``.
    """
    g = _coerce_spec(spec)
    disk = where if isinstance(where, Disk) else Disk(as_fraction(where))
    if disk.radius == 0:
        return abs(g.value(disk.center))
    c, r = disk.center, disk.radius
    reach = Interval.point(abs(c) + r)
    total = Interval.point(0)
    for t in g.terms:
        pbound = Interval.point(0)
        for k, a in enumerate(t.poly):
            if a:
                pbound = pbound + abs(a) * reach**k
        top = max(t.rate * (c - r), t.rate * (c + r))
        total = total + pbound * Interval.point(top).exp()
    return Interval(Interval.point(0).a, total.b)
