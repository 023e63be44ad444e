"""Recover the eventual polynomial ``Q`` with ``Q(n) = m_n`` and verify it exactly."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple

from .binom_poly import binomial_to_monomial, eval_binomial_univariate, monomial_to_binomial
from .errors import NoPolynomialFit, SequenceTooShort, VerificationFailed

DEFAULT_MAX_DEGREE = 8
MIN_STABILITY = 10


@dataclass(frozen=True)
class RecoveredPolynomial:
    """``Q(X) = sum q_k binom(X, k)`` agreeing with the data from ``tail_start`` on."""

    degree: int
    binom_coeffs: Tuple[Fraction, ...]
    tail_start: int
    checked: int = 0
    mode: str = "consecutive"

    def __post_init__(self) -> None:
        q = tuple(Fraction(c) for c in self.binom_coeffs)
        object.__setattr__(self, "binom_coeffs", q)
        if q and q[-1] == 0 and any(q):
            raise ValueError("leading binomial coefficient must be nonzero")

    def __call__(self, x) -> Fraction:
        return eval_binomial_univariate(self.binom_coeffs, x)

    def monomial(self) -> List[Fraction]:
        return binomial_to_monomial(self.binom_coeffs)

    def int_coeffs(self) -> Optional[List[int]]:
        if not integrality_check(self):
            return None
        return [c.numerator for c in self.binom_coeffs]

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "binom_coeffs": [_rational_str(c) for c in self.binom_coeffs],
            "tail_start": self.tail_start,
        }

    @classmethod
    def from_json(cls, d: dict) -> "RecoveredPolynomial":
        return cls(int(d["degree"]), tuple(Fraction(str(c)) for c in d["binom_coeffs"]), int(d["tail_start"]))


def _rational_str(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def finite_differences(seq: Sequence[int], order: int) -> List[int]:
    """``order``-fold forward difference of ``seq``."""
    if order < 0:
        raise ValueError("order must be nonnegative")
    if order > len(seq) - 1:
        raise SequenceTooShort(f"need more than {order} terms, got {len(seq)}")
    out = list(seq)
    for _ in range(order):
        out = [b - a for a, b in zip(out, out[1:])]
    return out


def integrality_check(Q: RecoveredPolynomial) -> bool:
    return all(c.denominator == 1 for c in Q.binom_coeffs)


def _trim(q: List[Fraction]) -> List[Fraction]:
    while len(q) > 1 and q[-1] == 0:
        q.pop()
    return q


def from_monomial(coeffs: Sequence, tail_start: int = 0) -> RecoveredPolynomial:
    """Import ``sum coeffs[a] X**a`` into the binomial basis."""
    q = _trim(monomial_to_binomial(coeffs) or [Fraction(0)])
    deg = len(q) - 1 if any(q) else 0
    return RecoveredPolynomial(deg, tuple(q), tail_start)


def _shifted_to_binomial(shifted: Sequence[Fraction], s: int) -> List[Fraction]:
    """``sum c_k binom(X - s, k)`` rewritten as ``sum q_k binom(X, k)``."""
    d = len(shifted) - 1
    values = [eval_binomial_univariate(shifted, n - s) for n in range(d + 1)]
    out = []
    for _ in range(d + 1):
        out.append(values[0])
        values = [b - a for a, b in zip(values, values[1:])]
    return out


def _runs(ns: Sequence[int]) -> List[Tuple[int, int]]:
    """Maximal runs of consecutive integers as ``(start_index, end_index_exclusive)``."""
    runs = []
    i = 0
    while i < len(ns):
        j = i + 1
        while j < len(ns) and ns[j] == ns[j - 1] + 1:
            j += 1
        runs.append((i, j))
        i = j
    return runs


def _window(d: int, stability_window: Optional[int]) -> int:
    return max(stability_window or MIN_STABILITY, d + 2)


def verify(Q: RecoveredPolynomial, points: Iterable[Tuple[int, int]]) -> int:
    """Check ``Q(n) = m`` for every point with ``n >= tail_start``; returns the count."""
    count = 0
    for n, m in points:
        if n < Q.tail_start:
            continue
        if Q(n) != m:
            raise VerificationFailed(f"Q({n}) = {Q(n)} but m_{n} = {m}")
        count += 1
    return count


def recover(
    points: Iterable[Tuple[int, int]],
    max_degree: int = DEFAULT_MAX_DEGREE,
    stability_window: Optional[int] = None,
) -> RecoveredPolynomial:
    """Least-degree polynomial through consecutive-integer data ``(n, m_n)``.

    Scans start points ``s`` along the longest consecutive run; at each ``s``
    the least ``d <= max_degree`` whose ``(d+1)``-st differences vanish on the
    stability window is accepted, read off in the shifted basis and verified
    on every later data point.
    """
    pts = sorted((int(n), int(m)) for n, m in points)
    if not pts:
        raise NoPolynomialFit("no data")
    ns = [n for n, _ in pts]
    ms = [m for _, m in pts]
    i0, i1 = max(_runs(ns), key=lambda r: (r[1] - r[0], -r[0]))
    need_min = _window(0, stability_window) + 1
    if i1 - i0 < need_min:
        raise SequenceTooShort(f"longest consecutive run has {i1 - i0} points, need at least {need_min}")
    for s in range(i0, i1):
        for d in range(max_degree + 1):
            W = _window(d, stability_window)
            if s + d + 1 + W > i1:
                break
            seg = ms[s : s + d + 1 + W]
            if any(finite_differences(seg, d + 1)):
                continue
            shifted = [Fraction(finite_differences(seg[: d + 1], k)[0]) for k in range(d + 1)]
            q = _trim(_shifted_to_binomial(shifted, ns[s]))
            deg = len(q) - 1 if any(q) else 0
            Q = RecoveredPolynomial(deg, tuple(q), ns[s])
            checked = verify(Q, pts)
            return RecoveredPolynomial(deg, Q.binom_coeffs, ns[s], checked, "consecutive")
    raise NoPolynomialFit(f"no polynomial of degree <= {max_degree} fits the data")


def _newton(nodes: Sequence[int], values: Sequence[int]) -> List[Fraction]:
    coef = [Fraction(v) for v in values]
    for k in range(1, len(nodes)):
        for i in range(len(nodes) - 1, k - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (nodes[i] - nodes[i - k])
    return coef


def _newton_eval(nodes: Sequence[int], coef: Sequence[Fraction], x) -> Fraction:
    acc = Fraction(0)
    for k in range(len(coef) - 1, -1, -1):
        acc = acc * (x - nodes[k]) + coef[k]
    return acc


def recover_dense(
    points: Iterable[Tuple[int, int]],
    max_degree: int = DEFAULT_MAX_DEGREE,
    stability_window: Optional[int] = None,
) -> RecoveredPolynomial:
    """Least-degree polynomial through data on arbitrary (e.g. prime) nodes.

    Interpolates exactly on ``d + 1`` consecutive nodes by divided differences
    and accepts ``d`` when the interpolant matches the next ``W`` nodes.
    """
    pts = sorted((int(n), int(m)) for n, m in points)
    ns = [n for n, _ in pts]
    ms = [m for _, m in pts]
    if max_degree + 1 >= len(ns):
        raise SequenceTooShort(f"{len(ns)} nodes cannot determine degree {max_degree}")
    for s in range(len(ns)):
        for d in range(max_degree + 1):
            W = _window(d, stability_window)
            if s + d + 1 + W > len(ns):
                break
            nodes = ns[s : s + d + 1]
            coef = _newton(nodes, ms[s : s + d + 1])
            if any(_newton_eval(nodes, coef, ns[k]) != ms[k] for k in range(s + d + 1, s + d + 1 + W)):
                continue
            vals = [_newton_eval(nodes, coef, x) for x in range(d + 1)]
            q = []
            for _ in range(d + 1):
                q.append(vals[0])
                vals = [b - a for a, b in zip(vals, vals[1:])]
            q = _trim(q)
            deg = len(q) - 1 if any(q) else 0
            Q = RecoveredPolynomial(deg, tuple(q), ns[s], mode="dense")
            checked = verify(Q, pts)
            return RecoveredPolynomial(deg, Q.binom_coeffs, ns[s], checked, "dense")
    raise NoPolynomialFit(f"no polynomial of degree <= {max_degree} fits the data")
