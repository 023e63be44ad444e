"""Binomial coefficients at rational arguments and bivariate polynomials in the
basis ``binom(X, i) * Y**j``.

Everything here is exact (``int`` / ``Fraction``) except
:func:`poly_eval_interval`, which produces rigorous enclosures.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from types import MappingProxyType
from typing import Dict, List, Mapping, Sequence, Tuple, Union

from .interval import Interval

Rational = Union[int, Fraction]
Index = Tuple[int, int]


def binom_eval(z: Rational, i: int) -> Fraction:
    """``z (z-1) ... (z-i+1) / i!`` as an exact rational."""
    if not isinstance(i, int) or isinstance(i, bool) or i < 0:
        raise ValueError("binomial index must be a nonnegative integer")
    if isinstance(z, int) and not isinstance(z, bool):
        if z >= 0:
            return Fraction(math.comb(z, i))
        # binom(-n, i) = (-1)^i binom(n + i - 1, i)
        return Fraction((-1) ** i * math.comb(-z + i - 1, i))
    z = Fraction(z)
    num = Fraction(1)
    for k in range(i):
        num *= z - k
    return num / math.factorial(i)


def binom_row(z: Rational, top: int) -> List[Fraction]:
    """``[binom(z, 0), ..., binom(z, top)]``."""
    if isinstance(z, int) and not isinstance(z, bool):
        row = [1]
        for i in range(1, top + 1):
            row.append(row[-1] * (z - i + 1) // i)
        return [Fraction(v) for v in row]
    z = Fraction(z)
    row = [Fraction(1)]
    for i in range(1, top + 1):
        row.append(row[-1] * (z - i + 1) / i)
    return row


def _int_binom_row(n: int, top: int) -> List[int]:
    row = [1]
    for i in range(1, top + 1):
        row.append(row[-1] * (n - i + 1) // i)
    return row


@dataclass(frozen=True)
class DegreeParams:
    """Degree bounds ``L`` (in X) and ``M`` (in Y) with ``T = (L+1)(M+1)``.

    With ``enforce_parity`` the near-integer setup is required:
    ``M + 1 < L`` and ``L`` odd (so ``T`` is even).
    """

    L: int
    M: int
    enforce_parity: bool = True

    def __post_init__(self) -> None:
        if self.L < 0 or self.M < 0:
            raise ValueError("degree bounds must be nonnegative")
        if self.enforce_parity:
            if not self.M + 1 < self.L:
                raise ValueError(f"need M + 1 < L, got L={self.L}, M={self.M}")
            if self.L % 2 == 0:
                raise ValueError(f"L must be odd, got {self.L}")

    @property
    def T(self) -> int:
        return (self.L + 1) * (self.M + 1)

    @property
    def unknowns(self) -> int:
        return self.T

    def m_prime(self, t_prime: int) -> Fraction:
        """Rational ``M'`` with ``T' = (L+1)(M'+1)``."""
        return Fraction(t_prime, self.L + 1) - 1

    def to_json(self) -> dict:
        return {"L": self.L, "M": self.M, "T": self.T}


@dataclass(frozen=True)
class BinomialPoly2:
    """``P(X, Y) = sum p[i, j] binom(X, i) Y**j`` with integer coefficients.

    ``coeffs`` only stores nonzero entries; it is exposed read-only.
    """

    L: int
    M: int
    coeffs: Mapping[Index, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        clean: Dict[Index, int] = {}
        for (i, j), c in dict(self.coeffs).items():
            if not (0 <= i <= self.L and 0 <= j <= self.M):
                raise ValueError(f"coefficient index {(i, j)} outside 0..{self.L} x 0..{self.M}")
            if isinstance(c, Fraction):
                if c.denominator != 1:
                    raise ValueError("coefficients must be integers")
                c = c.numerator
            if not isinstance(c, int) or isinstance(c, bool):
                raise TypeError("coefficients must be integers")
            if c:
                clean[(int(i), int(j))] = c
        object.__setattr__(self, "coeffs", MappingProxyType(dict(sorted(clean.items()))))

    # ------------------------------------------------------------------ basics
    @property
    def height(self) -> int:
        return max((abs(c) for c in self.coeffs.values()), default=0)

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def x_degree(self) -> int:
        return max((i for i, _ in self.coeffs), default=-1)

    @property
    def y_degree(self) -> int:
        return max((j for _, j in self.coeffs), default=-1)

    def column_order(self) -> List[Index]:
        return [(i, j) for i in range(self.L + 1) for j in range(self.M + 1)]

    @classmethod
    def from_vector(cls, L: int, M: int, vec: Sequence[int]) -> "BinomialPoly2":
        if len(vec) != (L + 1) * (M + 1):
            raise ValueError("vector length does not match (L+1)(M+1)")
        cols = [(i, j) for i in range(L + 1) for j in range(M + 1)]
        return cls(L, M, {c: int(v) for c, v in zip(cols, vec) if v})

    def to_vector(self) -> List[int]:
        return [self.coeffs.get(c, 0) for c in self.column_order()]

    def embed(self, L: int, M: int) -> "BinomialPoly2":
        """The same polynomial viewed inside a larger degree box."""
        if L < self.x_degree or M < self.y_degree:
            raise ValueError("target box too small")
        return BinomialPoly2(L, M, dict(self.coeffs))

    # ----------------------------------------------------------- conversions
    def to_monomial(self) -> Dict[Index, Fraction]:
        """Monomial coefficients ``{(a, b): c}`` of ``X**a Y**b`` (for display)."""
        out: Dict[Index, Fraction] = {}
        cache: Dict[int, List[Fraction]] = {}
        for (i, j), c in self.coeffs.items():
            if i not in cache:
                cache[i] = binomial_to_monomial_column(i)
            for a, w in enumerate(cache[i]):
                if w:
                    out[(a, j)] = out.get((a, j), Fraction(0)) + c * w
        return {k: v for k, v in sorted(out.items()) if v}

    def to_json(self) -> dict:
        return {
            "L": self.L,
            "M": self.M,
            "coeffs": [[i, j, str(c)] for (i, j), c in self.coeffs.items()],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    @classmethod
    def from_json(cls, d: Union[dict, str]) -> "BinomialPoly2":
        if isinstance(d, str):
            d = json.loads(d)
        coeffs = {(int(i), int(j)): int(str(c)) for i, j, c in d["coeffs"]}
        return cls(int(d["L"]), int(d["M"]), coeffs)

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for (i, j), c in self.coeffs.items():
            parts = [str(c)] if c != 1 or (i, j) == (0, 0) else []
            if i:
                parts.append(f"C(X,{i})")
            if j:
                parts.append("Y" if j == 1 else f"Y^{j}")
            terms.append("*".join(parts))
        return " + ".join(terms)


def binomial_to_monomial_column(i: int) -> List[Fraction]:
    """Monomial coefficients of ``binom(X, i)``, lowest degree first."""
    poly = [Fraction(1)]
    for k in range(i):
        # multiply by (X - k)
        nxt = [Fraction(0)] * (len(poly) + 1)
        for a, c in enumerate(poly):
            nxt[a + 1] += c
            nxt[a] -= k * c
        poly = nxt
    f = math.factorial(i)
    return [c / f for c in poly]


def poly_eval_exact(P: BinomialPoly2, x: Rational, y: Rational) -> Fraction:
    """``P(x, y)`` exactly; an ``int``-valued Fraction for integer ``x >= 0`` and integer ``y``."""
    if not P.coeffs:
        return Fraction(0)
    top = P.x_degree
    if isinstance(x, int) and isinstance(y, int):
        row = _int_binom_row(x, top)
        ypow = [1]
        for _ in range(P.y_degree):
            ypow.append(ypow[-1] * y)
        return Fraction(sum(c * row[i] * ypow[j] for (i, j), c in P.coeffs.items()))
    row = binom_row(x, top)
    y = Fraction(y)
    ypow = [Fraction(1)]
    for _ in range(P.y_degree):
        ypow.append(ypow[-1] * y)
    return sum((c * row[i] * ypow[j] for (i, j), c in P.coeffs.items()), Fraction(0))


def binom_interval_row(x: Interval, top: int) -> List[Interval]:
    """Enclosures of ``binom(x, i)`` for ``i = 0..top`` over every point of ``x``."""
    row = [Interval.point(1)]
    falling = Interval.point(1)
    for i in range(1, top + 1):
        falling = falling * (x - (i - 1))
        row.append(falling / math.factorial(i))
    return row


def poly_eval_interval(P: BinomialPoly2, x: Interval, y: Interval) -> Interval:
    """Enclosure of ``{P(x0, y0) : x0 in x, y0 in y}`` by naive interval evaluation."""
    x, y = Interval.point(x), Interval.point(y)
    if not P.coeffs:
        return Interval.point(0)
    row = binom_interval_row(x, P.x_degree)
    ypow = [y**j for j in range(P.y_degree + 1)]
    total = Interval.point(0)
    for (i, j), c in P.coeffs.items():
        total = total + c * row[i] * ypow[j]
    return total


def monomial_to_binomial(coeffs: Sequence[Rational]) -> List[Fraction]:
    """Binomial-basis coordinates ``q_k`` of ``sum coeffs[a] X**a``.

    ``q_k`` is the k-th forward difference of the polynomial at 0.
    """
    d = len(coeffs) - 1
    if d < 0:
        return []
    values = [sum(Fraction(c) * n**a for a, c in enumerate(coeffs)) for n in range(d + 1)]
    out = []
    for _ in range(d + 1):
        out.append(values[0])
        values = [b - a for a, b in zip(values, values[1:])]
    return out


def binomial_to_monomial(q: Sequence[Rational]) -> List[Fraction]:
    """Monomial coefficients of ``sum q[k] binom(X, k)``."""
    out = [Fraction(0)] * max(len(q), 1)
    for k, c in enumerate(q):
        if c:
            for a, w in enumerate(binomial_to_monomial_column(k)):
                out[a] += Fraction(c) * w
    return out


def eval_binomial_univariate(q: Sequence[Rational], x: Rational) -> Fraction:
    """``sum q[k] binom(x, k)`` exactly."""
    if not q:
        return Fraction(0)
    row = binom_row(x, len(q) - 1)
    return sum((Fraction(c) * b for c, b in zip(q, row)), Fraction(0))


def y_minus_q(q: Sequence[int], L: int, M: int) -> BinomialPoly2:
    """The auxiliary polynomial ``Y - Q(X)`` for a binomial-basis ``Q``, in an ``(L, M)`` box."""
    coeffs = {(0, 1): 1}
    for k, c in enumerate(q):
        if c:
            coeffs[(k, 0)] = -int(c)
    return BinomialPoly2(L, M, coeffs)
