"""Small integer solutions of the auxiliary-polynomial constraint system.

The system has one row per data point ``(n, m_n)`` and one column per basis
element ``binom(X, i) Y**j``.  The integer kernel is computed exactly by
fraction-free Gauss-Jordan elimination, reduced (FLINT LLL for moderate rank,
greedy pairwise size reduction otherwise) and the vector of least height is
returned.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Iterable, List, Optional, Sequence, Tuple

import flint

from .binom_poly import BinomialPoly2, DegreeParams, _int_binom_row, poly_eval_exact
from .certificates import EXPONENTIAL, GrowthCertificate
from .errors import DuplicateNode, EmptyKernel, OverdeterminedSystem
from .interval import Interval, exp

Vector = List[int]

LLL_MAX_RANK = 40
SIZE_REDUCTION_PASSES = 12


@dataclass(frozen=True)
class ConstraintSystem:
    """Rows ``binom(n, i) m**j`` in column order ``(0,0), (0,1), ..., (L, M)``."""

    rows: Tuple[Tuple[int, int], ...]
    L: int
    M: int
    matrix: Tuple[Tuple[int, ...], ...]

    @property
    def unknowns(self) -> int:
        return (self.L + 1) * (self.M + 1)

    def columns(self) -> List[Tuple[int, int]]:
        return [(i, j) for i in range(self.L + 1) for j in range(self.M + 1)]

    @classmethod
    def from_matrix(cls, matrix: Sequence[Sequence[int]], L: int, M: int) -> "ConstraintSystem":
        """A raw system with no associated data points."""
        width = (L + 1) * (M + 1)
        mat = tuple(tuple(int(v) for v in row) for row in matrix)
        if any(len(r) != width for r in mat):
            raise ValueError(f"rows must have {width} entries")
        return cls((), L, M, mat)


@dataclass(frozen=True)
class SiegelSolution:
    coeffs: BinomialPoly2
    height: int
    theoretical_bound: Optional[Interval] = None
    kernel_rank: int = 0
    reduction: str = "none"
    notes: Tuple[str, ...] = field(default=())

    @property
    def within_bound(self) -> Optional[bool]:
        if self.theoretical_bound is None:
            return None
        return self.theoretical_bound.certainly_ge(self.height)

    def to_json(self) -> dict:
        return {
            "polynomial": self.coeffs.to_json(),
            "height": str(self.height),
            "theoretical_bound": None if self.theoretical_bound is None else self.theoretical_bound.to_json(),
            "within_bound": self.within_bound,
            "kernel_rank": self.kernel_rank,
            "reduction": self.reduction,
        }


def build_system(points: Iterable[Tuple[int, int]], L: int, M: int) -> ConstraintSystem:
    pts = [(int(n), int(m)) for n, m in points]
    if len({n for n, _ in pts}) != len(pts):
        raise DuplicateNode("constraint points must have distinct n")
    if any(n < 0 for n, _ in pts):
        raise ValueError("constraint nodes must be nonnegative")
    if len(pts) >= (L + 1) * (M + 1):
        raise OverdeterminedSystem(f"{len(pts)} constraints for {(L + 1) * (M + 1)} unknowns")
    matrix = []
    for n, m in pts:
        brow = _int_binom_row(n, L)
        mpow = [m**j for j in range(M + 1)]
        matrix.append(tuple(brow[i] * mpow[j] for i in range(L + 1) for j in range(M + 1)))
    return ConstraintSystem(tuple(pts), L, M, tuple(matrix))


def _primitive(v: Vector) -> Vector:
    g = math.gcd(*v)
    return [x // g for x in v] if g > 1 else list(v)


def pivot_priority(L: int, M: int) -> List[int]:
    """Column indices ordered by ``(j, i)``: pure-X columns are eliminated first."""
    return [i * (M + 1) + j for j in range(M + 1) for i in range(L + 1)]


def integer_kernel_basis(
    matrix: Sequence[Sequence[int]], ncols: int, priority: Optional[Sequence[int]] = None
) -> List[Vector]:
    """A basis of primitive integer vectors for the rational kernel of ``matrix``.

    Fraction-free Gauss-Jordan elimination: each row update is
    ``(p/g) row - (v/g) pivot_row`` followed by division by the row content,
    so every intermediate entry stays an exact integer.
    """
    order = list(priority) if priority is not None else list(range(ncols))
    rows = [list(r) for r in matrix if any(r)]
    pivots: List[Tuple[int, int]] = []
    r = 0
    for c in order:
        if r == len(rows):
            break
        best = None
        for k in range(r, len(rows)):
            v = rows[k][c]
            if v and (best is None or abs(v) < abs(rows[best][c])):
                best = k
        if best is None:
            continue
        rows[r], rows[best] = rows[best], rows[r]
        prow = rows[r]
        p = prow[c]
        for k in range(len(rows)):
            v = rows[k][c]
            if k == r or not v:
                continue
            g = math.gcd(p, v)
            a, b = p // g, v // g
            new = [a * x - b * y for x, y in zip(rows[k], prow)]
            rows[k] = _primitive(new) if any(new) else new
        pivots.append((r, c))
        r += 1
    pivot_cols = {c for _, c in pivots}
    basis = []
    for f in order:
        if f in pivot_cols:
            continue
        involved = [(ri, c) for ri, c in pivots if rows[ri][f]]
        lam = math.lcm(*(abs(rows[ri][c]) for ri, c in involved)) if involved else 1
        vec = [0] * ncols
        vec[f] = lam
        for ri, c in involved:
            vec[c] = -rows[ri][f] * lam // rows[ri][c]
        basis.append(_primitive(vec))
    return basis


def integer_kernel_lattice(matrix: Sequence[Sequence[int]], ncols: int) -> List[Vector]:
    """A Z-basis of ``{x in Z^ncols : matrix x = 0}``.

    Unimodular row reduction of ``[matrix^T | I]``: rows whose left block is
    eliminated carry, in the right block, a basis of the integer kernel.  The
    rational basis from :func:`integer_kernel_basis` spans a sublattice that
    can have index > 1; this one is saturated.
    """
    width = len(matrix)
    rows = [[matrix[k][c] for k in range(width)] + [int(c == i) for i in range(ncols)] for c in range(ncols)]
    r = 0
    for c in range(width):
        while True:
            live = [k for k in range(r, ncols) if rows[k][c]]
            if not live:
                break
            piv = min(live, key=lambda k: abs(rows[k][c]))
            rows[r], rows[piv] = rows[piv], rows[r]
            p = rows[r][c]
            done = True
            for k in range(r + 1, ncols):
                v = rows[k][c]
                if v:
                    q = v // p
                    rows[k] = [x - q * y for x, y in zip(rows[k], rows[r])]
                    if rows[k][c]:
                        done = False
            if done:
                r += 1
                break
    return [row[width:] for row in rows[r:]]


def _height(v: Vector) -> int:
    return max(abs(x) for x in v)


def _norm2(v: Vector) -> int:
    return sum(x * x for x in v)


def _key(v: Vector) -> Tuple[int, int]:
    return (_height(v), _norm2(v))


def size_reduce(basis: List[Vector], passes: int = SIZE_REDUCTION_PASSES) -> List[Vector]:
    """Greedy pairwise reduction: replace ``b_i`` by ``b_i - k b_j`` whenever that
    lowers ``(height, ||.||^2)``.  The lattice spanned is unchanged."""
    basis = [list(b) for b in basis]
    keys = [_key(b) for b in basis]
    for _ in range(passes):
        changed = False
        for i in range(len(basis)):
            for j in range(len(basis)):
                if i == j:
                    continue
                bj = basis[j]
                nj = keys[j][1]
                dot = sum(x * y for x, y in zip(basis[i], bj))
                k = (2 * dot + nj) // (2 * nj)
                if k == 0:
                    continue
                cand = [x - k * y for x, y in zip(basis[i], bj)]
                ck = _key(cand)
                if ck < keys[i]:
                    basis[i], keys[i] = cand, ck
                    changed = True
        if not changed:
            break
    return basis


def lll_reduce(basis: List[Vector]) -> List[Vector]:
    """LLL-reduced basis of the same lattice (FLINT, delta = 0.99)."""
    red = flint.fmpz_mat([[int(x) for x in b] for b in basis]).lll()
    return [[int(x) for x in row] for row in red.tolist()]


def _normalize_sign(v: Vector, priority: Sequence[int]) -> Vector:
    for c in reversed(priority):
        if v[c]:
            return v if v[c] > 0 else [-x for x in v]
    return v


def _degree_key(v: Vector, M: int) -> Tuple[int, int]:
    nz = [(c // (M + 1), c % (M + 1)) for c, x in enumerate(v) if x]
    return (max(j for _, j in nz), max(i for i, _ in nz))


def solve_small(
    sys: ConstraintSystem,
    *,
    bound: Optional[Interval] = None,
    lll_max_rank: int = LLL_MAX_RANK,
    strict_bound: bool = False,
) -> SiegelSolution:
    """Nonzero integer solution of least height among a reduced kernel basis.

    ``bound`` is the theoretical height bound; exceeding it warns (or raises
    ``ValueError`` with ``strict_bound``).
    """
    ncols = sys.unknowns
    priority = pivot_priority(sys.L, sys.M)
    basis = integer_kernel_basis(sys.matrix, ncols, priority)
    if not basis:
        raise EmptyKernel("kernel is trivial; the system is not underdetermined")
    rank = len(basis)
    if 1 < rank <= lll_max_rank:
        reduced = size_reduce(lll_reduce(integer_kernel_lattice(sys.matrix, ncols)))
        how = "lll+size"
    elif rank > 1:
        reduced = size_reduce(basis)
        how = "size"
    else:
        reduced = basis
        how = "none"
    candidates = [v for v in reduced + basis if any(v)]
    best = min(candidates, key=lambda v: (_height(v), _degree_key(v, sys.M), _norm2(v)))
    best = _normalize_sign(_primitive(best), priority)
    P = BinomialPoly2.from_vector(sys.L, sys.M, best)
    for n, m in sys.rows:
        if poly_eval_exact(P, n, m) != 0:
            raise AssertionError(f"kernel vector fails constraint at n={n}")
    for row in sys.matrix:
        if sum(a * x for a, x in zip(row, best)):
            raise AssertionError("kernel vector fails a matrix row")
    notes = []
    sol = SiegelSolution(P, P.height, bound, rank, how)
    if bound is not None and not sol.within_bound:
        msg = f"solution height {P.height} exceeds the theoretical bound {bound}"
        if strict_bound:
            raise ValueError(msg)
        warnings.warn(msg, RuntimeWarning, stacklevel=2)
        notes.append(msg)
    return SiegelSolution(P, P.height, bound, rank, how, tuple(notes))


def siegel_height_bound(params: DegreeParams, cert: GrowthCertificate) -> Interval:
    """Closed-form coefficient bound for the auxiliary polynomial.

    exponential: ``(L+1)(M+1) e^L (M+4)^L c_2^M e^(delta M T)``;
    sublog: ``T e^L (M+4)^L c_1^M e^(M rate(T))``.
    """
    L, M, T = params.L, params.M, params.T
    core = exp(L) * Interval.point(M + 4) ** L
    if cert.mode == EXPONENTIAL:
        return (L + 1) * (M + 1) * core * Interval.point(cert.c_2) ** M * Interval.point(cert.delta * M * T).exp()
    return T * core * Interval.point(cert.c_1) ** M * (M * cert.rate(T)).exp()
