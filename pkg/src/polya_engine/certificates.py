"""Hypothesis carriers: growth certificates for ``f``/``g`` and the sampled data."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Tuple

from .errors import CertificateMismatch, SpecInvalid
from .interval import Interval, as_fraction, decide_below, exp, log

EXPONENTIAL = "exponential"
SUBLOG = "sublog"
NEAR_INTEGER = "near-integer"
EXACT_ON_A = "exact-on-A"


def d_min() -> Interval:
    """``2 log 2 + 1``: the decay threshold for the near-integer chain."""
    return 2 * log(2) + 1


def _frac(x) -> Optional[Fraction]:
    return None if x is None else as_fraction(x)


@dataclass(frozen=True)
class GrowthCertificate:
    """Constants bounding ``f``, its continuation ``g`` and ``|g - f|``.

    ``exponential`` mode: ``|f(x)| < c_1 e^(delta' x)``, ``|g(z)| <= c_2 e^(delta |z|)``,
    ``|g(x) - f(x)| < c_3 e^(-D x)``.

    ``sublog`` mode: with ``N = 2 lam + 2`` and ``rate(x) = x / (log x)^N``,
    ``|f(x)| < c_1 exp(x / (log x)^(N + alpha))``, ``|g(z)| <= c_2 exp(rate(|z|))``,
    ``|g(x) - f(x)| <= c_3 e^(-eta x)``.  ``rate`` is taken at ``max(|z|, e^N)``:
    it is increasing from there on, and the floor keeps the envelope monotone
    and finite near the origin.
    """

    mode: str
    c_1: Fraction
    c_2: Fraction
    c_3: Fraction
    delta_prime: Optional[Fraction] = None
    delta: Optional[Fraction] = None
    D: Optional[Fraction] = None
    eta: Optional[Fraction] = None
    lam: Optional[Fraction] = None
    alpha: Optional[Fraction] = None

    def __post_init__(self) -> None:
        for name in ("c_1", "c_2", "c_3", "delta_prime", "delta", "D", "eta", "lam", "alpha"):
            object.__setattr__(self, name, _frac(getattr(self, name)))
        if self.mode not in (EXPONENTIAL, SUBLOG):
            raise SpecInvalid(f"unknown certificate mode {self.mode!r}")
        if min(self.c_1, self.c_2, self.c_3) <= 0:
            raise SpecInvalid("c_1, c_2, c_3 must be positive")
        if self.mode == EXPONENTIAL:
            if self.delta is None or self.delta_prime is None or self.D is None:
                raise SpecInvalid("exponential certificates need delta', delta and D")
            if not 0 < self.delta_prime < self.delta < 1:
                raise SpecInvalid("need 0 < delta' < delta < 1")
            if self.D <= 0:
                raise SpecInvalid("D must be positive")
            if self.c_2 < 2 * self.c_1:
                raise SpecInvalid("need c_2 >= 2 c_1")
        else:
            if self.eta is None or self.lam is None or self.alpha is None:
                raise SpecInvalid("sublog certificates need eta, lambda and alpha")
            if min(self.eta, self.lam, self.alpha) <= 0:
                raise SpecInvalid("eta, lambda, alpha must be positive")
            if self.c_2 < self.c_1:
                raise SpecInvalid("need c_2 >= c_1")

    @property
    def rate_exponent(self) -> Fraction:
        """``N = 2 lam + 2`` (sublog mode)."""
        return 2 * self.lam + 2

    def rate(self, x) -> Interval:
        """Growth exponent of ``g`` at modulus ``x``."""
        x = Interval.point(x)
        if self.mode == EXPONENTIAL:
            return self.delta * x
        N = self.rate_exponent
        x = x.max_with(exp(N))
        return x / x.log() ** Interval.point(N)

    def envelope(self, x) -> Interval:
        """``max(1, c_2 exp(rate(x)))``: bounds ``|g|`` on ``|z| <= x`` (and the data there)."""
        return (self.c_2 * self.rate(x).exp()).max_with(1)

    def decay(self, x) -> Interval:
        """``e^(-D x)`` or ``e^(-eta x)``."""
        rate = self.D if self.mode == EXPONENTIAL else self.eta
        return (-rate * Interval.point(x)).exp()

    def warnings(self) -> List[str]:
        out = []
        if self.mode == EXPONENTIAL and not d_min().certainly_lt(self.D):
            out.append(
                f"D = {self.D} does not exceed 2 log 2 + 1; the near-integer chain cannot certify asymptotically"
            )
        return out

    def to_json(self) -> dict:
        d = {"mode": self.mode}
        for name in ("c_1", "c_2", "c_3", "delta_prime", "delta", "D", "eta", "lam", "alpha"):
            v = getattr(self, name)
            if v is not None:
                d[name] = str(v)
        return d

    @classmethod
    def from_json(cls, d: dict) -> "GrowthCertificate":
        keys = ("mode", "c_1", "c_2", "c_3", "delta_prime", "delta", "D", "eta", "lam", "alpha")
        unknown = set(d) - set(keys)
        if unknown:
            raise SpecInvalid(f"unknown certificate fields {sorted(unknown)}")
        return cls(**{k: d[k] for k in keys if k in d})


@dataclass(frozen=True)
class Sample:
    n: int
    v: Fraction
    m: int

    def to_json(self) -> dict:
        return {"n": self.n, "v": f"{self.v.numerator}/{self.v.denominator}", "m": self.m}

    @classmethod
    def from_json(cls, d: dict) -> "Sample":
        try:
            n, m = d["n"], d["m"]
            v = Fraction(str(d["v"]))
        except (KeyError, ValueError, ZeroDivisionError) as exc:
            raise SpecInvalid(f"malformed sample {d!r}: {exc}") from exc
        if not isinstance(n, int) or not isinstance(m, int) or isinstance(n, bool):
            raise SpecInvalid(f"n and m must be integers in {d!r}")
        return cls(n, v, m)


@dataclass(frozen=True)
class SampleSeries:
    """The data ``(n, v_n, m_n)``.

    In ``near-integer`` mode ``|v_n - m_n| < c_0 e^(-D n)`` is the hypothesis;
    in ``exact-on-A`` mode every entry is a point of ``A`` and ``v_n = m_n``.
    """

    entries: Tuple[Sample, ...]
    c_0: Fraction = Fraction(1)
    D: Fraction = Fraction(3)
    mode: str = NEAR_INTEGER
    _index: Dict[int, Sample] = field(default_factory=dict, init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        entries = tuple(
            e if isinstance(e, Sample) else Sample(int(e[0]), Fraction(e[1]), int(e[2])) for e in self.entries
        )
        object.__setattr__(self, "entries", entries)
        object.__setattr__(self, "c_0", as_fraction(self.c_0))
        object.__setattr__(self, "D", as_fraction(self.D))
        if self.mode not in (NEAR_INTEGER, EXACT_ON_A):
            raise SpecInvalid(f"unknown series mode {self.mode!r}")
        ns = [e.n for e in entries]
        if any(b <= a for a, b in zip(ns, ns[1:])):
            raise SpecInvalid("entries must be sorted by n and distinct")
        if self.c_0 <= 0 or self.D <= 0:
            raise SpecInvalid("c_0 and D must be positive")
        object.__setattr__(self, "_index", {e.n: e for e in entries})

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __contains__(self, n: int) -> bool:
        return n in self._index

    def get(self, n: int) -> Optional[Sample]:
        return self._index.get(n)

    @property
    def ns(self) -> List[int]:
        return [e.n for e in self.entries]

    @property
    def first(self) -> int:
        return self.entries[0].n

    @property
    def last(self) -> int:
        return self.entries[-1].n

    def points(self, ns: Iterable[int]) -> List[Tuple[int, int]]:
        return [(n, self._index[n].m) for n in ns]

    def entry_ok(self, s: Sample) -> bool:
        if self.mode == EXACT_ON_A:
            return s.v == s.m
        gap = abs(s.v - s.m)
        if gap == 0:
            return True
        ok, _, _ = decide_below(lambda: gap / (self.c_0 * exp(-self.D * s.n)), 1)
        return ok is True

    def check(self, ns: Optional[Iterable[int]] = None) -> None:
        """Raise :class:`CertificateMismatch` if an entry violates the series hypothesis."""
        items = self.entries if ns is None else [self._index[n] for n in ns if n in self._index]
        for s in items:
            if not self.entry_ok(s):
                if self.mode == EXACT_ON_A:
                    raise CertificateMismatch(f"n={s.n}: value {s.v} is not the integer {s.m}")
                raise CertificateMismatch(
                    f"n={s.n}: |v - m| = {float(abs(s.v - s.m)):.3g} violates c_0 e^(-D n) decay"
                )

    def restrict(self, keep) -> "SampleSeries":
        return SampleSeries(tuple(e for e in self.entries if keep(e.n)), self.c_0, self.D, self.mode)

    # ------------------------------------------------------------------ I/O
    def to_jsonl(self) -> str:
        return "".join(json.dumps(e.to_json(), sort_keys=True) + "\n" for e in self.entries)

    @classmethod
    def from_jsonl(cls, text: str, **kwargs) -> "SampleSeries":
        rows = []
        for k, line in enumerate(text.splitlines(), 1):
            line = line.strip()
            if not line:
                continue
            try:
                rows.append(Sample.from_json(json.loads(line)))
            except json.JSONDecodeError as exc:
                raise SpecInvalid(f"line {k}: {exc}") from exc
        if not rows:
            raise SpecInvalid("input contains no samples")
        rows.sort(key=lambda s: s.n)
        return cls(tuple(rows), **kwargs)

    def header_json(self) -> dict:
        return {"c_0": str(self.c_0), "D": str(self.D), "mode": self.mode, "count": len(self.entries)}


def max_abs(values: Iterable[Fraction]) -> Fraction:
    return max((abs(Fraction(v)) for v in values), default=Fraction(0))


def log_fraction(x: Fraction) -> float:
    """Natural log of a positive rational as a float, robust to huge numerators."""
    return math.log(x.numerator) - math.log(x.denominator)
