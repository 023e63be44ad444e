"""Outward-rounded real intervals.

Endpoints are mpmath raw binary floats; every operation delegates to
``mpmath.libmp.libmpi`` with an explicit working precision, so the true
result set is always contained in the returned interval.  The precision is
held in a context variable (default 128 bits) and can be raised locally with
:func:`working_precision`.
"""

from __future__ import annotations

import contextvars
import math
from contextlib import contextmanager
from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction
from typing import Callable, Iterator, Optional, Tuple, Union

import mpmath
from mpmath.libmp import (
    finf,
    fninf,
    from_int,
    from_rational,
    fzero,
    libmpi,
    mpf_le,
    mpf_lt,
    mpf_neg,
    round_ceiling,
    round_floor,
    to_rational,
)

DEFAULT_PRECISION = 128
MAX_PRECISION = 2048
EXACT_FACTORIAL_LIMIT = 10_000

_precision: contextvars.ContextVar[int] = contextvars.ContextVar(
    "polya_engine_precision", default=DEFAULT_PRECISION
)

Scalar = Union[int, Fraction, float, Decimal, str]


def get_precision() -> int:
    return _precision.get()


@contextmanager
def working_precision(bits: int) -> Iterator[int]:
    """Temporarily set the working precision (in bits) for interval operations."""
    if bits < 16:
        raise ValueError("precision must be at least 16 bits")
    token = _precision.set(int(bits))
    try:
        yield int(bits)
    finally:
        _precision.reset(token)


def as_fraction(x: Scalar) -> Fraction:
    """Exact rational value of a scalar (floats are converted exactly)."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not numbers here")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, (float, Decimal)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot interpret {type(x).__name__} as an exact rational")


def _scalar_bounds(x: Scalar, prec: int) -> Tuple[tuple, tuple]:
    if isinstance(x, int) and not isinstance(x, bool):
        return from_int(x, prec, round_floor), from_int(x, prec, round_ceiling)
    q = as_fraction(x)
    p, d = q.numerator, q.denominator
    return from_rational(p, d, prec, round_floor), from_rational(p, d, prec, round_ceiling)


def _raw_to_fraction(r: tuple) -> Fraction:
    if r in (finf, fninf):
        raise OverflowError("infinite endpoint has no rational value")
    p, q = to_rational(r)
    return Fraction(int(p), int(q))


def _decimal_string(r: tuple, upward: bool, digits: int) -> str:
    """Decimal rendering of a raw endpoint, rounded outward to ``digits`` digits.

    Works on the binary mantissa and exponent directly, so endpoints with
    hundreds of thousands of digits never pass through ``str(int)``.
    """
    if r == finf:
        return "inf"
    if r == fninf:
        return "-inf"
    sign, man, ex, bc = r
    if not man:
        return "0"
    man = int(man)

    def ratio(k: int) -> Tuple[int, int]:
        # |x| / 10^k as num/den
        num, den = man, 1
        if ex >= 0:
            num <<= ex
        else:
            den <<= -ex
        if k >= 0:
            den *= 10**k
        else:
            num *= 10 ** (-k)
        return num, den

    e = math.floor((ex + bc - 1) * math.log10(2))
    while True:
        num, den = ratio(e)
        if num < den:
            e -= 1
        elif num >= 10 * den:
            e += 1
        else:
            break
    shift = e - digits + 1
    num, den = ratio(shift)
    # magnitude rounds up for the upper end of a positive value or the lower end of a negative one
    neg = bool(sign)
    mant = -((-num) // den) if upward != neg else num // den
    text = str(Decimal(f"{mant}E{shift}"))
    return "-" + text if neg else text


def _parse_endpoint(s: str) -> Union[Fraction, float]:
    s = s.strip()
    if s in ("inf", "+inf"):
        return math.inf
    if s == "-inf":
        return -math.inf
    return Fraction(Decimal(s))


@dataclass(frozen=True)
class Interval:
    """A closed real interval ``[lo, hi]`` with directed-rounded endpoints."""

    a: tuple
    b: tuple

    def __post_init__(self) -> None:
        if not mpf_le(self.a, self.b):
            raise ValueError("interval lower end exceeds upper end")

    # ----------------------------------------------------------- construction
    @classmethod
    def point(cls, x: Union[Scalar, "Interval"]) -> "Interval":
        """Tightest enclosure of an exact scalar at the working precision."""
        if isinstance(x, Interval):
            return x
        lo, hi = _scalar_bounds(x, get_precision())
        return cls(lo, hi)

    @classmethod
    def from_bounds(cls, lo: Scalar, hi: Scalar) -> "Interval":
        prec = get_precision()
        a = fninf if lo == -math.inf else _scalar_bounds(lo, prec)[0]
        b = finf if hi == math.inf else _scalar_bounds(hi, prec)[1]
        return cls(a, b)

    @classmethod
    def hull_of(cls, *items: Union[Scalar, "Interval"]) -> "Interval":
        if not items:
            raise ValueError("hull of nothing")
        out = cls.point(items[0])
        for it in items[1:]:
            out = out.hull(cls.point(it))
        return out

    @classmethod
    def nonnegative(cls) -> "Interval":
        return cls(fzero, finf)

    @classmethod
    def from_json(cls, d: dict) -> "Interval":
        return cls.from_bounds(_parse_endpoint(d["lo"]), _parse_endpoint(d["hi"]))

    # -------------------------------------------------------------- accessors
    @property
    def lo(self) -> mpmath.mpf:
        return mpmath.mp.make_mpf(self.a)

    @property
    def hi(self) -> mpmath.mpf:
        return mpmath.mp.make_mpf(self.b)

    @property
    def lo_fraction(self) -> Fraction:
        return _raw_to_fraction(self.a)

    @property
    def hi_fraction(self) -> Fraction:
        return _raw_to_fraction(self.b)

    @property
    def is_finite(self) -> bool:
        return self.a not in (finf, fninf) and self.b not in (finf, fninf)

    @property
    def raw(self) -> Tuple[tuple, tuple]:
        return (self.a, self.b)

    def width(self) -> "Interval":
        return Interval.point(0) if self.a == self.b else _wrap(
            libmpi.mpi_sub((self.b, self.b), (self.a, self.a), get_precision())
        )

    # ------------------------------------------------------------- arithmetic
    def __add__(self, other) -> "Interval":
        return _wrap(libmpi.mpi_add(self.raw, _coerce(other), get_precision()))

    __radd__ = __add__

    def __sub__(self, other) -> "Interval":
        return _wrap(libmpi.mpi_sub(self.raw, _coerce(other), get_precision()))

    def __rsub__(self, other) -> "Interval":
        return _wrap(libmpi.mpi_sub(_coerce(other), self.raw, get_precision()))

    def __mul__(self, other) -> "Interval":
        return _wrap(libmpi.mpi_mul(self.raw, _coerce(other), get_precision()))

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Interval":
        return _wrap(libmpi.mpi_div(self.raw, _coerce(other), get_precision()))

    def __rtruediv__(self, other) -> "Interval":
        return _wrap(libmpi.mpi_div(_coerce(other), self.raw, get_precision()))

    def __neg__(self) -> "Interval":
        return Interval(mpf_neg(self.b), mpf_neg(self.a))

    def __abs__(self) -> "Interval":
        return _wrap(libmpi.mpi_abs(self.raw, get_precision()))

    def __pow__(self, k) -> "Interval":
        if isinstance(k, int) and not isinstance(k, bool):
            if k < 0:
                return 1 / (self ** (-k))
            return _wrap(libmpi.mpi_pow_int(self.raw, k, get_precision()))
        exponent = Interval.point(k)
        if not mpf_lt(fzero, self.a):
            raise ValueError("non-integer powers need a positive base")
        return (exponent * self.log()).exp()

    def exp(self) -> "Interval":
        return _wrap(libmpi.mpi_exp(self.raw, get_precision()))

    def log(self) -> "Interval":
        if mpf_lt(self.a, fzero):
            raise ValueError("log of an interval reaching below zero")
        return _wrap(libmpi.mpi_log(self.raw, get_precision()))

    def sqrt(self) -> "Interval":
        if mpf_lt(self.a, fzero):
            raise ValueError("sqrt of an interval reaching below zero")
        return _wrap(libmpi.mpi_sqrt(self.raw, get_precision()))

    def max_with(self, other) -> "Interval":
        o = _coerce(other)
        a = o[0] if mpf_lt(self.a, o[0]) else self.a
        b = o[1] if mpf_lt(self.b, o[1]) else self.b
        return Interval(a, b)

    def min_with(self, other) -> "Interval":
        o = _coerce(other)
        a = self.a if mpf_lt(self.a, o[0]) else o[0]
        b = self.b if mpf_lt(self.b, o[1]) else o[1]
        return Interval(a, b)

    def clamp_nonnegative(self) -> "Interval":
        if mpf_lt(self.b, fzero):
            raise ValueError("interval is entirely negative")
        return Interval(fzero if mpf_lt(self.a, fzero) else self.a, self.b)

    # ------------------------------------------------------------ set algebra
    def hull(self, other) -> "Interval":
        o = _coerce(other)
        a = self.a if mpf_le(self.a, o[0]) else o[0]
        b = o[1] if mpf_le(self.b, o[1]) else self.b
        return Interval(a, b)

    def intersect(self, other) -> Optional["Interval"]:
        o = _coerce(other)
        a = o[0] if mpf_lt(self.a, o[0]) else self.a
        b = self.b if mpf_lt(self.b, o[1]) else o[1]
        if mpf_lt(b, a):
            return None
        return Interval(a, b)

    def contains(self, x: Union[Scalar, "Interval"]) -> bool:
        """True if the exact value (or every point of an interval) lies inside."""
        if isinstance(x, Interval):
            return mpf_le(self.a, x.a) and mpf_le(x.b, self.b)
        q = as_fraction(x)
        return (self.a == fninf or _raw_to_fraction(self.a) <= q) and (
            self.b == finf or q <= _raw_to_fraction(self.b)
        )

    __contains__ = contains

    def is_subset_of(self, other: "Interval") -> bool:
        return other.contains(self)

    # ------------------------------------------------------------ comparisons
    def certainly_lt(self, x) -> bool:
        return mpf_lt(self.b, _coerce(x)[0])

    def certainly_le(self, x) -> bool:
        return mpf_le(self.b, _coerce(x)[0])

    def certainly_gt(self, x) -> bool:
        return mpf_lt(_coerce(x)[1], self.a)

    def certainly_ge(self, x) -> bool:
        return mpf_le(_coerce(x)[1], self.a)

    # --------------------------------------------------------- serialization
    def to_json(self, digits: int = 40) -> dict:
        return {
            "lo": _decimal_string(self.a, upward=False, digits=digits),
            "hi": _decimal_string(self.b, upward=True, digits=digits),
        }

    def __str__(self) -> str:
        d = self.to_json(digits=12)
        return f"[{d['lo']}, {d['hi']}]"

    def __repr__(self) -> str:
        return f"Interval{str(self)}"


def _wrap(raw: Tuple[tuple, tuple]) -> Interval:
    return Interval(raw[0], raw[1])


def _coerce(x) -> Tuple[tuple, tuple]:
    if isinstance(x, Interval):
        return x.raw
    return _scalar_bounds(x, get_precision())


def iv(x: Union[Scalar, Interval]) -> Interval:
    """Shorthand for :meth:`Interval.point`."""
    return Interval.point(x)


def exp(x) -> Interval:
    return Interval.point(x).exp()


def log(x) -> Interval:
    return Interval.point(x).log()


def pi() -> Interval:
    return _wrap(libmpi.mpi_pi(get_precision()))


def log_factorial_interval(n: int) -> Interval:
    """Enclosure of ``log(n!)``; Robbins' two-sided Stirling bounds above the exact limit."""
    if n < 0:
        raise ValueError("factorial of a negative integer")
    if n <= EXACT_FACTORIAL_LIMIT:
        return Interval.point(math.factorial(n)).log()
    x = Interval.point(n)
    base = x * x.log() - x + (2 * pi() * x).log() / 2
    corr = Interval.from_bounds(Fraction(1, 12 * n + 1), Fraction(1, 12 * n))
    return base + corr


def factorial_interval(n: int) -> Interval:
    if n <= EXACT_FACTORIAL_LIMIT:
        if n < 0:
            raise ValueError("factorial of a negative integer")
        return Interval.point(math.factorial(n))
    return log_factorial_interval(n).exp()


def decide_below(
    compute: Callable[[], Interval],
    threshold: Scalar = 1,
    *,
    start_bits: Optional[int] = None,
    max_bits: int = MAX_PRECISION,
) -> Tuple[Optional[bool], Interval, int]:
    """Decide ``value < threshold`` for a recomputable enclosure.

    The enclosure is recomputed at doubling precision while the comparison is
    ambiguous.  Returns ``(decision, enclosure, bits)``; ``decision`` is None
    when the question stays open at ``max_bits``.
    """
    bits = start_bits or get_precision()
    while True:
        with working_precision(bits):
            value = compute()
            if value.certainly_lt(threshold):
                return True, value, bits
            if value.certainly_ge(threshold):
                return False, value, bits
        if bits >= max_bits:
            return None, value, bits
        bits = min(2 * bits, max_bits)
