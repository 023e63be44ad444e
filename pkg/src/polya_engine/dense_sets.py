"""Index sets ``A`` with window density ``T/(log T)^lam`` and their calibration."""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import EmptyWindow, HorizonExhausted, SpecInvalid
from .interval import Interval, as_fraction

ELIDE_THRESHOLD = 1000


def sieve(horizon: int) -> List[int]:
    """Primes ``<= horizon`` by the sieve of Eratosthenes."""
    if horizon < 2:
        return []
    flags = bytearray([1]) * (horizon + 1)
    flags[0] = flags[1] = 0
    for p in range(2, math.isqrt(horizon) + 1):
        if flags[p]:
            flags[p * p :: p] = bytes(len(range(p * p, horizon + 1, p)))
    return [n for n, f in enumerate(flags) if f]


def window_count(elements: Sequence[int], epsilon: Fraction, T: int) -> int:
    """``#(A ∩ [epsilon T, T])`` for a sorted element list."""
    lo = math.ceil(epsilon * T)
    return bisect.bisect_right(elements, T) - bisect.bisect_left(elements, lo)


def _density_ratio(count: int, T: int, lam: Fraction) -> Interval:
    t = Interval.point(T)
    if lam == 0:
        return count / t
    return count * t.log() ** Interval.point(lam) / t


@dataclass(frozen=True)
class DensityCalibration:
    a: Fraction
    b: Fraction
    T_range: Tuple[int, int]
    argmin_T: int
    argmax_T: int
    trend: str
    b_first_half: Fraction
    b_second_half: Fraction

    def to_json(self) -> dict:
        return {
            "a": str(self.a),
            "b": str(self.b),
            "a_float": float(self.a),
            "b_float": float(self.b),
            "T_range": list(self.T_range),
            "argmin_T": self.argmin_T,
            "argmax_T": self.argmax_T,
            "trend": self.trend,
            "b_first_half": float(self.b_first_half),
            "b_second_half": float(self.b_second_half),
            "status": "calibrated on range; hypothesized beyond range",
        }


def calibrate_density(
    elements: Sequence[int], lam, epsilon, T_range: Tuple[int, int]
) -> DensityCalibration:
    """Tightest ``(a, b)`` with ``a T/(log T)^lam <= #(A ∩ [eps T, T]) <= b T/(log T)^lam``
    for every integer ``T`` in ``T_range`` (inclusive).

    ``a`` and ``b`` are rational and rounded outward, so the inequalities hold exactly.
    """
    lam, epsilon = as_fraction(lam), as_fraction(epsilon)
    lo, hi = T_range
    if lo < 2 or hi < lo:
        raise SpecInvalid(f"bad calibration range {T_range}")
    if not 0 < epsilon < 1:
        raise SpecInvalid("epsilon must lie in (0, 1)")
    elements = sorted(elements)
    a = b = None
    argmin = argmax = lo
    mid = (lo + hi) // 2
    halves = [Fraction(0), Fraction(0)]
    for T in range(lo, hi + 1):
        count = window_count(elements, epsilon, T)
        if count == 0:
            raise EmptyWindow(f"A ∩ [{epsilon}·{T}, {T}] is empty")
        ratio = _density_ratio(count, T, lam)
        r_lo, r_hi = ratio.lo_fraction, ratio.hi_fraction
        if a is None or r_lo < a:
            a, argmin = r_lo, T
        if b is None or r_hi > b:
            b, argmax = r_hi, T
        h = 0 if T <= mid else 1
        halves[h] = max(halves[h], r_hi)
    first, second = halves
    if second == 0 or first == 0:
        trend = "flat"
    elif second > first * Fraction(21, 20):
        trend = "increasing"
    elif second * Fraction(21, 20) < first:
        trend = "decreasing"
    else:
        trend = "flat"
    return DensityCalibration(
        _round_down(a), _round_up(b), (lo, hi), argmin, argmax, trend, _round_up(first), _round_up(second)
    )


def _round_down(x: Fraction, digits: int = 12) -> Fraction:
    s = 10**digits
    return Fraction(math.floor(x * s), s)


def _round_up(x: Fraction, digits: int = 12) -> Fraction:
    s = 10**digits
    return Fraction(math.ceil(x * s), s)


@dataclass(frozen=True)
class DenseSet:
    elements: Tuple[int, ...]
    lam: Fraction
    epsilon: Fraction = Fraction(1, 2)
    a: Optional[Fraction] = None
    b: Optional[Fraction] = None
    horizon: int = 0
    generator: Optional[str] = None
    calibration: Optional[DensityCalibration] = None
    _members: frozenset = field(default=frozenset(), init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        els = tuple(int(e) for e in self.elements)
        if any(e <= 0 for e in els):
            raise SpecInvalid("elements must be positive integers")
        if any(y <= x for x, y in zip(els, els[1:])):
            raise SpecInvalid("elements must be strictly increasing")
        object.__setattr__(self, "elements", els)
        object.__setattr__(self, "lam", as_fraction(self.lam))
        object.__setattr__(self, "epsilon", as_fraction(self.epsilon))
        if not 0 < self.epsilon < 1:
            raise SpecInvalid("epsilon must lie in (0, 1)")
        if self.horizon < (els[-1] if els else 0):
            object.__setattr__(self, "horizon", els[-1])
        object.__setattr__(self, "_members", frozenset(els))

    def __contains__(self, n: int) -> bool:
        return n in self._members

    def __len__(self) -> int:
        return len(self.elements)

    def window(self, lo, hi) -> List[int]:
        """Elements in the closed range ``[lo, hi]`` (real endpoints allowed)."""
        i = bisect.bisect_left(self.elements, math.ceil(lo))
        j = bisect.bisect_right(self.elements, math.floor(hi))
        return list(self.elements[i:j])

    def seed_window(self, T: int) -> List[int]:
        """``A ∩ [epsilon T, T]``."""
        return self.window(self.epsilon * T, T)

    def count(self, T: int) -> int:
        return window_count(self.elements, self.epsilon, T)

    def to_json(self, threshold: int = ELIDE_THRESHOLD) -> dict:
        d: Dict[str, object] = {
            "lambda": str(self.lam),
            "epsilon": str(self.epsilon),
            "a": None if self.a is None else str(self.a),
            "b": None if self.b is None else str(self.b),
            "horizon": self.horizon,
            "generator": self.generator,
            "size": len(self.elements),
        }
        if self.calibration is not None:
            d["calibration"] = self.calibration.to_json()
        if self.generator is None or len(self.elements) <= threshold:
            d["elements"] = list(self.elements)
        return d

    @classmethod
    def from_json(cls, d: dict) -> "DenseSet":
        gen = d.get("generator")
        if "elements" in d:
            els = d["elements"]
        elif gen == "primes":
            els = sieve(int(d["horizon"]))
        else:
            raise SpecInvalid(f"cannot rebuild elements for generator {gen!r}")
        a = d.get("a")
        b = d.get("b")
        return cls(
            tuple(els),
            Fraction(str(d.get("lambda", 1))),
            Fraction(str(d.get("epsilon", "1/2"))),
            None if a is None else Fraction(str(a)),
            None if b is None else Fraction(str(b)),
            int(d.get("horizon", 0)),
            gen,
        )


def default_calibration_range(horizon: int) -> Tuple[int, int]:
    return (max(3, horizon // 20), horizon)


def from_elements(
    elements: Sequence[int],
    lam=1,
    epsilon=Fraction(1, 2),
    *,
    horizon: Optional[int] = None,
    T_range: Optional[Tuple[int, int]] = None,
    generator: Optional[str] = None,
) -> DenseSet:
    """A calibrated :class:`DenseSet`; ``a``/``b`` stay ``None`` if some window is empty."""
    els = sorted(set(int(e) for e in elements))
    horizon = horizon if horizon is not None else (els[-1] if els else 0)
    cal = None
    try:
        cal = calibrate_density(els, lam, epsilon, T_range or default_calibration_range(horizon))
    except (EmptyWindow, SpecInvalid):
        pass
    return DenseSet(
        tuple(els),
        lam,
        epsilon,
        None if cal is None else cal.a,
        None if cal is None else cal.b,
        horizon,
        generator,
        cal,
    )


def primes_up_to(horizon: int, *, epsilon=Fraction(1, 2), T_range: Optional[Tuple[int, int]] = None) -> DenseSet:
    if horizon < 2:
        raise SpecInvalid("horizon must be at least 2")
    return from_elements(sieve(horizon), 1, epsilon, horizon=horizon, T_range=T_range, generator="primes")


def next_element(A: DenseSet, T: int) -> int:
    """Least element of ``A`` strictly greater than ``T``."""
    i = bisect.bisect_right(A.elements, T)
    if i == len(A.elements):
        raise HorizonExhausted(f"no element of A above {T} within horizon {A.horizon}")
    return A.elements[i]
