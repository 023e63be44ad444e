"""Zero propagation for the auxiliary polynomial.

Each certificate bounds ``|P(R, m_R)|`` at a target point ``R`` using only
``P``'s vanishing on a window of verified points, the growth certificate and
the data.  The chain is

    sup_phi            bound for |phi| on |z| <= R, phi(z) = P(z + R, g(z + R))
    blaschke_first_term  sup_phi * prod |a_n| / R
    data_term          sum_n |phi(a_n)| * weight_n
    to_beat_gap        |P(R, m_R) - P(R, g(R))|
    final_bound        sum of the three

and ``P(R, m_R)`` is an integer, so ``final_bound < 1`` forces it to vanish.
The exact value is computed alongside as an independent oracle.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from types import MappingProxyType
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

from .binom_poly import BinomialPoly2, DegreeParams, poly_eval_exact
from .bounds import (
    BLASCHKE_INDEX_NOTE,
    BlaschkeInstance,
    binom_upper_bound,
    blaschke_terms,
    polydiff_bound,
    tijdeman_lower_bound,
)
from .certificates import EXPONENTIAL, GrowthCertificate, SampleSeries, d_min
from .continuation import Continuation, Disk, g_enclosure
from .dense_sets import DenseSet, next_element
from .errors import (
    CertificateMismatch,
    GapTooLarge,
    HorizonExhausted,
    InsufficientData,
    SoundnessViolation,
)
from .interval import Interval, decide_below, exp, factorial_interval, get_precision, log
from .siegel import SiegelSolution

ZERO = "zero"
INCONCLUSIVE = "inconclusive"
MODES = ("both", "certificate", "oracle")

STEP_INDEXING_NOTE = "step targets use T' = (L+1)(M'+1) with rational M'"
ELL_NOTE = "ell is the least integer with target <= ell * top"
DENSE_WEIGHT_NOTE = (
    "dense-mode data term uses exact Blaschke weights in place of the aggregated log-power constant"
)


# --------------------------------------------------------------------------- parameters
def growth_ratio(M: int) -> Interval:
    """``e^3 (M+4)^2 / 2^((M+1)/2)``."""
    return exp(3) * Interval.point(M + 4) ** 2 / Interval.point(2) ** Interval.point(Fraction(M + 1, 2))


@dataclass(frozen=True)
class ParameterChoice:
    mode: str
    M: int
    ratio_at_M: Interval
    ratio_before: Interval
    delta_cap: Interval
    D_min: Interval
    D3_admissible: bool
    M_rule: str
    lam: Optional[Fraction] = None

    def dense_M(self, L: int) -> int:
        if self.lam is None:
            raise ValueError("dense rule needs lambda")
        return dense_m_rule(L, self.lam)

    def to_json(self) -> dict:
        return {
            "mode": self.mode,
            "M": self.M,
            "ratio_at_M": self.ratio_at_M.to_json(),
            "ratio_at_M_minus_1": self.ratio_before.to_json(),
            "delta_cap": self.delta_cap.to_json(),
            "D_min": self.D_min.to_json(),
            "D3_admissible": self.D3_admissible,
            "M_rule": self.M_rule,
            "lambda": None if self.lam is None else str(self.lam),
        }


def dense_m_rule(L: int, lam) -> int:
    """``M`` with ``M + 1 = round((log(L+1))^(lam+1))`` (at least 0)."""
    val = Interval.point(L + 1).log() ** Interval.point(Fraction(lam) + 1)
    mid = (val.lo_fraction + val.hi_fraction) / 2
    return max(0, round(mid) - 1)


def choose_parameters(mode: str = EXPONENTIAL, lam=None, *, scan_limit: int = 200) -> ParameterChoice:
    """Least ``M`` with ``growth_ratio(M) < 1/2``, the matching ``delta`` cap and ``D_min``."""
    chosen = None
    for M in range(1, scan_limit + 1):
        ok, _, _ = decide_below(lambda: growth_ratio(M), Fraction(1, 2))
        if ok:
            chosen = M
            break
    if chosen is None:
        raise ValueError(f"no M <= {scan_limit} satisfies the ratio condition")
    cap = log(2) / (3 * chosen * (chosen + 1))
    dm = d_min()
    rule = "M fixed by the ratio condition; L free (odd, M + 1 < L)"
    lam_f = None if lam is None else Fraction(lam)
    if mode != EXPONENTIAL:
        rule = "M + 1 = round((log(L+1))^(lambda+1))"
    return ParameterChoice(
        mode,
        chosen,
        growth_ratio(chosen),
        growth_ratio(chosen - 1),
        cap,
        dm,
        dm.certainly_lt(3),
        rule,
        lam_f,
    )


def parameters_report(lam=1) -> dict:
    choice = choose_parameters()
    dense = choose_parameters("sublog", lam)
    return {
        "exponential": choice.to_json(),
        "sublog": dense.to_json(),
        "dense_M_examples": {str(L): dense_m_rule(L, lam) for L in (9, 49, 99, 999)},
        "delta_cap_formula": "log 2 / (3 M (M + 1))",
        "D_min_formula": "2 log 2 + 1",
        "D": "3",
    }


# --------------------------------------------------------------------------- closed forms
def base_case_closed_forms(
    T: int, L: int, M: int, cert: GrowthCertificate, c_4: Interval, c_0=1
) -> Dict[str, Interval]:
    """The simplified base-case displays, with ``c_0`` and ``c_3`` made explicit.

    ``supgn`` and ``to_beat_gap`` carry the factor ``c_0 + c_3`` (``2`` when both are 1).
    """
    c2 = Interval.point(cert.c_2)
    dMT = Interval.point(cert.delta * M * T)
    DT2 = Interval.point(cert.D * T / 2)
    cc = Interval.point(Fraction(c_0) + cert.c_3)
    Mp4 = Interval.point(M + 4)
    gap = cc * Interval.point(T) ** 3 * c2 ** (3 * M) * exp(2 * L) * Mp4 ** (2 * L) * (3 * dMT - DT2).exp()
    ratio = growth_ratio(M)
    first = Interval.point(T) ** 2 * c2 ** (2 * M) * ratio ** (L + 1) * (3 * dMT).exp()
    data = (
        cc
        * c_4
        * Interval.point(T) ** 4
        * c2 ** (3 * M)
        * exp(2 * L)
        * Mp4 ** (2 * L)
        * (3 * dMT - DT2).exp()
        * (2 * exp(1)) ** (T // 2 - 1)
    )
    final = (
        c_4
        * Interval.point(T) ** 4
        * c2 ** (3 * M)
        * ratio ** (L + 1)
        * (3 * dMT).exp()
        * (1 + (-DT2 + T * log(2) + Fraction(T, 2)).exp())
    )
    return {
        "supgn": gap,
        "to_beat_gap": gap,
        "sup_phi": Interval.point(T) ** 2 * c2 ** (2 * M) * exp(3 * L) * Mp4 ** (2 * L) * (3 * dMT).exp(),
        "blaschke_first_term": first,
        "data_term": data,
        "final_display": final,
    }


# --------------------------------------------------------------------------- certificate
@dataclass(frozen=True)
class PropagationCertificate:
    step_T: int
    kind: str
    regime: str
    window: Tuple[int, int, int]
    chain: Mapping[str, Interval]
    analytic_conclusion: Optional[str]
    conclusion: str
    certified_by: Optional[str]
    exact_value: Optional[int]
    final_bound: Interval
    constants_used: Mapping[str, object]
    precision_bits: int
    notes: Tuple[str, ...] = field(default=())

    def __post_init__(self) -> None:
        object.__setattr__(self, "chain", MappingProxyType(dict(self.chain)))
        object.__setattr__(self, "constants_used", MappingProxyType(dict(self.constants_used)))
        if self.conclusion == ZERO and not self.final_bound.certainly_lt(1):
            raise SoundnessViolation("zero conclusion without a bound below 1")
        if self.conclusion == ZERO and self.exact_value not in (None, 0):
            raise SoundnessViolation(f"zero conclusion at {self.step_T} but P = {self.exact_value}")

    @property
    def is_zero(self) -> bool:
        return self.conclusion == ZERO

    def to_json(self) -> dict:
        return {
            "step_T": self.step_T,
            "kind": self.kind,
            "regime": self.regime,
            "window": {"lo": self.window[0], "hi": self.window[1], "count": self.window[2]},
            "chain": {k: v.to_json() for k, v in self.chain.items()},
            "final_bound": self.final_bound.to_json(),
            "analytic_conclusion": self.analytic_conclusion,
            "conclusion": self.conclusion,
            "certified_by": self.certified_by,
            "exact_value": None if self.exact_value is None else str(self.exact_value),
            "constants_used": {k: _jsonable(v) for k, v in self.constants_used.items()},
            "precision_bits": self.precision_bits,
            "notes": list(self.notes),
        }


def _jsonable(v):
    if isinstance(v, Interval):
        return v.to_json()
    if isinstance(v, Fraction):
        return str(v)
    return v


# --------------------------------------------------------------------------- helpers
PolyLike = Union[SiegelSolution, BinomialPoly2]


def _unwrap(P: PolyLike) -> Tuple[BinomialPoly2, Optional[Interval]]:
    if isinstance(P, SiegelSolution):
        return P.coeffs, P.theoretical_bound
    return P, None


def _height_for_chain(P: BinomialPoly2, bound: Optional[Interval], source: str) -> Tuple[Interval, str]:
    if source == "theoretical" and bound is not None and bound.certainly_ge(P.height):
        return bound, "theoretical"
    return Interval.point(P.height), "achieved"


def _require(data: SampleSeries, ns: Sequence[int]) -> None:
    missing = [n for n in ns if n not in data]
    if missing:
        head = ", ".join(str(n) for n in missing[:5])
        raise InsufficientData(f"no data for n = {head}{' ...' if len(missing) > 5 else ''}")


def _check_hypotheses(
    data: SampleSeries,
    cert: GrowthCertificate,
    g: Optional[Continuation],
    ns: Sequence[int],
    R: int,
    radius_bound: Interval,
    disk_bound: Interval,
) -> None:
    """Verify every hypothesis the chain consumes at the points it uses."""
    data.check(ns)
    big = radius_bound.lo_fraction
    for n in ns:
        s = data.get(n)
        if abs(s.m) > big or abs(s.v) > big:
            raise CertificateMismatch(f"n={n}: data exceeds the growth envelope {radius_bound}")
    if g is None:
        return
    for n in ns:
        s = data.get(n)
        exact = g.exact_value(n)
        if exact is not None:
            gap = abs(exact - s.v)
            ok = gap == 0 or decide_below(lambda: gap / (cert.c_3 * cert.decay(n)), 1)[0] is True
            value_ok = abs(exact) <= big
        else:
            ok = decide_below(lambda: abs(g.value(n) - s.v) / (cert.c_3 * cert.decay(n)), 1)[0] is True
            value_ok = abs(g.value(n)).certainly_le(radius_bound)
        if not ok:
            raise CertificateMismatch(f"n={n}: |g(n) - v_n| exceeds c_3 times the decay")
        if not value_ok:
            raise CertificateMismatch(f"n={n}: |g(n)| exceeds the growth envelope")
    sup = g_enclosure(g, Disk(R, R))
    if not sup.certainly_le(disk_bound):
        raise CertificateMismatch(
            f"sup of |g| on the disk of radius {R} about {R} exceeds c_2 exp(rate({2 * R}))"
        )


def _near_integer_chain(
    H: Interval, L: int, M: int, R: int, window: Sequence[int], cert: GrowthCertificate, c_0: Fraction
) -> Dict[str, Interval]:
    N = len(window)
    n_min = window[0]
    B_R = cert.envelope(R)
    B_2R = cert.envelope(2 * R)
    binom_R = binom_upper_bound(R, L, L)
    binom_2R = binom_upper_bound(2 * R, L, L)
    cc = c_0 + cert.c_3
    supgn = polydiff_bound(H, L, M, binom_R, B_R, B_R, cc * cert.decay(n_min))
    gap = polydiff_bound(H, L, M, binom_R, B_R, B_R, cc * cert.decay(R))
    sup_phi = (L + 1) * (M + 1) * H * binom_2R * B_2R**M
    # the |a_n| = R - n run through 1..N exactly
    first = sup_phi * factorial_interval(N) / Interval.point(R) ** N
    weight = Interval.point(R - n_min) ** (N - 1) / Interval.point(tijdeman_lower_bound(N))
    c_4 = weight / (2 * exp(1)) ** (N - 1)
    data_term = N * supgn * weight
    final = first + data_term + gap
    return {
        "binom_R": binom_R,
        "binom_2R": binom_2R,
        "envelope_R": B_R,
        "envelope_2R": B_2R,
        "supgn": supgn,
        "sup_phi": sup_phi,
        "blaschke_first_term": first,
        "weight_bound": weight,
        "c_4": c_4,
        "data_term": data_term,
        "to_beat_gap": gap,
        "final_bound": final,
    }


def _dense_chain(
    H: Interval, L: int, M: int, R: int, window: Sequence[int], cert: GrowthCertificate, top: int
) -> Dict[str, Interval]:
    n_min = window[0]
    B_top = cert.envelope(top)
    B_R = cert.envelope(R)
    B_2R = cert.envelope(2 * R)
    binom_top = binom_upper_bound(top, L, L)
    binom_R = binom_upper_bound(R, L, L)
    binom_2R = binom_upper_bound(2 * R, L, L)
    supgn = polydiff_bound(H, L, M, binom_top, B_top, B_top, cert.c_3 * cert.decay(n_min))
    gap = polydiff_bound(H, L, M, binom_R, B_R, B_R, cert.c_3 * cert.decay(R))
    sup_phi = (L + 1) * (M + 1) * H * binom_2R * B_2R**M
    inst = BlaschkeInstance(R, [n - R for n in window], sup_phi, [supgn] * len(window))
    first, second, _ = blaschke_terms(inst)
    final = first + second + gap
    return {
        "binom_top": binom_top,
        "binom_2R": binom_2R,
        "envelope_top": B_top,
        "envelope_2R": B_2R,
        "supgn": supgn,
        "sup_phi": sup_phi,
        "blaschke_first_term": first,
        "data_term": second,
        "to_beat_gap": gap,
        "final_bound": final,
    }


def _dense_constants(A: DenseSet, window: Sequence[int], R: int, top: int, ell: int) -> Dict[str, object]:
    out: Dict[str, object] = {"ell": ell, "epsilon": A.epsilon, "lambda": A.lam}
    prod = Fraction(1)
    for n in window:
        prod *= Fraction(R - n, R)
    out["blaschke_factor"] = Interval.point(prod)
    if A.a is not None:
        out["a"] = A.a
        out["b"] = A.b
        r = Interval.point(1 - A.epsilon**2) ** Interval.point(A.a / 2)
        out["r"] = r
        t = Interval.point(top)
        out["r_power"] = r ** (t / t.log() ** Interval.point(A.lam))
    return out


def _decide(
    P: BinomialPoly2,
    R: int,
    m_R: int,
    mode: str,
    compute_chain,
) -> Tuple[Optional[str], Optional[int], Interval, Dict[str, Interval], int]:
    chain: Dict[str, Interval] = {}
    analytic = None
    bits = get_precision()
    final = Interval.from_bounds(0, float("inf"))
    if mode != "oracle":
        holder = {}

        def run_chain() -> Interval:
            holder["chain"] = compute_chain()
            return holder["chain"]["final_bound"]

        ok, final, bits = decide_below(run_chain)
        chain = holder["chain"]
        analytic = ZERO if ok else INCONCLUSIVE
    exact = None
    if mode != "certificate":
        exact = int(poly_eval_exact(P, R, m_R))
    if analytic == ZERO and exact not in (None, 0):
        raise SoundnessViolation(f"analytic chain concluded zero at {R} but P(R, m_R) = {exact}")
    if exact is not None and mode != "oracle" and final.certainly_lt(abs(exact)):
        raise CertificateMismatch(f"exact |P({R}, m)| = {abs(exact)} exceeds the analytic bound {final}")
    return analytic, exact, final, chain, bits


def _conclude(analytic, exact, final) -> Tuple[str, Optional[str], Interval]:
    if exact is not None:
        narrowed = Interval.point(abs(exact))
        if analytic == ZERO:
            return ZERO, "chain", narrowed
        return (ZERO, "oracle", narrowed) if exact == 0 else (INCONCLUSIVE, None, narrowed)
    if analytic == ZERO:
        return ZERO, "chain", final
    return INCONCLUSIVE, None, final


# --------------------------------------------------------------------------- state
@dataclass(frozen=True)
class InductionState:
    """``top``: near-integer mode, the next target ``T'``; dense mode, the last verified top."""

    top: int
    verified: frozenset
    T: int


def _certify(
    P: PolyLike,
    data: SampleSeries,
    cert: Optional[GrowthCertificate],
    params: DegreeParams,
    g: Optional[Continuation],
    *,
    kind: str,
    R: int,
    window: List[int],
    mode: str,
    dense: Optional[DenseSet],
    top: int,
    ell: Optional[int],
    height_source: str,
) -> PropagationCertificate:
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    poly, bound = _unwrap(P)
    if not window:
        raise InsufficientData(f"empty window below target {R}")
    _require(data, list(window) + [R])
    H, hsrc = _height_for_chain(poly, bound, height_source)
    L, M = poly.L, poly.M
    if dense is None:
        chain_fn = lambda: _near_integer_chain(H, L, M, R, window, cert, data.c_0)  # noqa: E731
        regime = "near-integer"
    else:
        chain_fn = lambda: _dense_chain(H, L, M, R, window, cert, top)  # noqa: E731
        regime = "dense"
    used = list(window) + [R]
    if mode != "oracle" and (cert is None or g is None):
        # every chain term is a bound on P(z, g(z)); without g it bounds nothing
        raise ValueError("the analytic chain needs a growth certificate and a continuation")
    if cert is None:
        data.check(used)
    else:
        gg = g if mode != "oracle" else None
        _check_hypotheses(data, cert, gg, used, R, cert.envelope(R), cert.envelope(2 * R))
    analytic, exact, final, chain, bits = _decide(poly, R, data.get(R).m, mode, chain_fn)
    conclusion, by, final_bound = _conclude(analytic, exact, final)
    if exact is not None and analytic is not None:
        final_bound = final.intersect(final_bound) or final_bound
    constants: Dict[str, object] = {
        "L": L,
        "M": M,
        "T": params.T,
        "M_prime": params.m_prime(R) if dense is None else params.m_prime(top),
        "height": str(poly.height),
        "height_source": hsrc,
        "c_0": data.c_0,
        "D_data": data.D,
    }
    if cert is not None:
        constants.update({"c_2": cert.c_2, "c_3": cert.c_3})
        if cert.mode == EXPONENTIAL:
            constants.update({"delta": cert.delta, "D": cert.D})
        else:
            constants.update({"eta": cert.eta, "lambda": cert.lam, "N": cert.rate_exponent})
    notes = [BLASCHKE_INDEX_NOTE]
    if kind == "step" and dense is None:
        notes.append(STEP_INDEXING_NOTE)
    if dense is not None:
        constants.update(_dense_constants(dense, window, R, top, ell))
        notes.extend([ELL_NOTE, DENSE_WEIGHT_NOTE])
    if "c_4" in chain:
        constants["c_4"] = chain["c_4"]
    if bound is not None:
        constants["theoretical_height_bound"] = bound
    return PropagationCertificate(
        step_T=R,
        kind=kind,
        regime=regime,
        window=(window[0], window[-1], len(window)),
        chain=chain,
        analytic_conclusion=analytic,
        conclusion=conclusion,
        certified_by=by,
        exact_value=exact,
        final_bound=final_bound,
        constants_used=constants,
        precision_bits=bits,
        notes=tuple(notes),
    )


def _dense_target(A: DenseSet, top: int, ell_max: int) -> Tuple[int, int]:
    R = next_element(A, top)
    ell = -(-R // top)
    if ell > ell_max:
        raise GapTooLarge(f"next element {R} exceeds {ell_max} * {top}")
    return R, ell


def _check_seed(poly: BinomialPoly2, data: SampleSeries, window: Sequence[int]) -> None:
    _require(data, window)
    for n in window:
        if poly_eval_exact(poly, n, data.get(n).m) != 0:
            raise CertificateMismatch(f"P does not vanish at the seed point n={n}")


def base_case(
    P: PolyLike,
    data: SampleSeries,
    cert: Optional[GrowthCertificate],
    params: DegreeParams,
    g: Optional[Continuation] = None,
    *,
    mode: str = "both",
    dense: Optional[DenseSet] = None,
    ell_max: int = 2,
    height_source: str = "achieved",
) -> PropagationCertificate:
    """Certificate at ``T`` (near-integer) or at ``min{n in A : n > T}`` (dense)."""
    poly, _ = _unwrap(P)
    T = params.T
    if dense is None:
        window = list(range(-(-T // 2), T))
        _check_seed(poly, data, window)
        return _certify(
            P, data, cert, params, g, kind="base", R=T, window=window, mode=mode,
            dense=None, top=T, ell=None, height_source=height_source,
        )
    window = dense.seed_window(T)
    _check_seed(poly, data, window)
    R, ell = _dense_target(dense, T, ell_max)
    return _certify(
        P, data, cert, params, g, kind="base", R=R, window=window, mode=mode,
        dense=dense, top=T, ell=ell, height_source=height_source,
    )


def inductive_step(
    P: PolyLike,
    state: InductionState,
    data: SampleSeries,
    cert: Optional[GrowthCertificate],
    params: DegreeParams,
    g: Optional[Continuation] = None,
    *,
    mode: str = "both",
    dense: Optional[DenseSet] = None,
    ell_max: int = 2,
    height_source: str = "achieved",
) -> Tuple[PropagationCertificate, InductionState]:
    """One propagation step; returns the certificate and the advanced state."""
    if dense is None:
        R = state.top
        window = list(range(-(-R // 2), R))
        if not set(window) <= state.verified:
            raise ValueError(f"window [{window[0]}, {R}) is not fully verified")
        c = _certify(
            P, data, cert, params, g, kind="step", R=R, window=window, mode=mode,
            dense=None, top=R, ell=None, height_source=height_source,
        )
        nxt = InductionState(R + 1, state.verified | {R}, state.T) if c.is_zero else state
        return c, nxt
    top = state.top
    window = dense.window(dense.epsilon * top, top)
    if not set(window) <= state.verified:
        raise ValueError(f"window A ∩ [{dense.epsilon}·{top}, {top}] is not fully verified")
    R, ell = _dense_target(dense, top, ell_max)
    c = _certify(
        P, data, cert, params, g, kind="step", R=R, window=window, mode=mode,
        dense=dense, top=top, ell=ell, height_source=height_source,
    )
    nxt = InductionState(R, state.verified | {R}, state.T) if c.is_zero else state
    return c, nxt


@dataclass(frozen=True)
class InductionRun:
    certificates: Tuple[PropagationCertificate, ...]
    completed: bool
    failure: Optional[dict]
    verified: Tuple[int, ...]

    def __len__(self) -> int:
        return len(self.certificates)

    def __iter__(self):
        return iter(self.certificates)

    def __getitem__(self, k):
        return self.certificates[k]

    @property
    def all_zero(self) -> bool:
        return self.completed and all(c.is_zero for c in self.certificates)

    def to_json(self) -> dict:
        return {
            "completed": self.completed,
            "failure": self.failure,
            "count": len(self.certificates),
            "verified_range": [self.verified[0], self.verified[-1]] if self.verified else None,
            "certificates": [c.to_json() for c in self.certificates],
        }


def _failure(c: PropagationCertificate) -> dict:
    return {
        "stage": "induction",
        "step_T": c.step_T,
        "kind": c.kind,
        "reason": "exact value nonzero" if c.exact_value not in (None, 0) else "chain bound not below 1",
        "exact_value": None if c.exact_value is None else str(c.exact_value),
        "final_bound": c.final_bound.to_json(),
    }


def run(
    P: PolyLike,
    data: SampleSeries,
    cert: Optional[GrowthCertificate],
    params: DegreeParams,
    horizon: int,
    g: Optional[Continuation] = None,
    *,
    mode: str = "both",
    dense: Optional[DenseSet] = None,
    ell_max: int = 2,
    height_source: str = "achieved",
) -> InductionRun:
    """Base case, then steps until the next target would pass ``horizon``."""
    T = params.T
    if horizon < T:
        raise ValueError(f"horizon {horizon} is below T = {T}")
    kw = dict(mode=mode, dense=dense, ell_max=ell_max, height_source=height_source)
    first = base_case(P, data, cert, params, g, **kw)
    certs = [first]
    if dense is None:
        seed = set(range(-(-T // 2), T))
    else:
        seed = set(dense.seed_window(T))
    if not first.is_zero:
        return InductionRun(tuple(certs), False, _failure(first), tuple(sorted(seed)))
    verified = frozenset(seed | {first.step_T})
    state = InductionState(T + 1 if dense is None else first.step_T, verified, T)
    while True:
        if dense is None:
            if state.top > horizon:
                break
        else:
            try:
                nxt = next_element(dense, state.top)
            except HorizonExhausted:
                break
            if nxt > horizon:
                break
        c, state = inductive_step(P, state, data, cert, params, g, **kw)
        certs.append(c)
        if not c.is_zero:
            return InductionRun(tuple(certs), False, _failure(c), tuple(sorted(state.verified)))
    return InductionRun(tuple(certs), True, None, tuple(sorted(state.verified)))
