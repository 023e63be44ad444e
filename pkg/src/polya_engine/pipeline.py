"""Instance generation and end-to-end orchestration: ingest, solve, propagate, recover."""

from __future__ import annotations

import datetime as _dt
import json
import math
import random
import warnings
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

from .binom_poly import DegreeParams, binomial_to_monomial, eval_binomial_univariate, monomial_to_binomial
from .bounds import BLASCHKE_INDEX_NOTE
from .certificates import (
    EXACT_ON_A,
    EXPONENTIAL,
    NEAR_INTEGER,
    SUBLOG,
    GrowthCertificate,
    Sample,
    SampleSeries,
    d_min,
)
from .continuation import Continuation
from .dense_sets import DenseSet, from_elements, primes_up_to
from .errors import (
    CertificateMismatch,
    EngineError,
    InsufficientData,
    SpecInvalid,
    VerificationFailed,
)
from .induction import ELL_NOTE, STEP_INDEXING_NOTE, InductionRun, run
from .interval import DEFAULT_PRECISION, Interval, exp, working_precision
from .recovery import RecoveredPolynomial, integrality_check, recover, recover_dense, verify
from .siegel import build_system, siegel_height_bound, solve_small

SCHEMA = "polya-engine/1"
THEOREM1 = "theorem1"
THEOREM2 = "theorem2"

POLYNOMIAL_RECOVERED = "polynomial-recovered"
INCONCLUSIVE = "inconclusive"
REFUTED = "refuted-data"

DEFAULT_DELTA = Fraction(1, 64)
DEFAULT_MAX_DEGREE = 4
NOISE_SHRINK = 1 - Fraction(1, 2**10)
NOISE_GRAIN = 2**20

TAIL_NOTE = "tail_start is the first point from which the fit was observed; it is not claimed minimal"
DENSITY_NOTE = "density constants are calibrated on a finite range and hypothesized beyond it"
REFINE_NOTE = (
    "targets where the exact oracle found P(n, m_n) != 0 were added as Siegel constraints and the run repeated; "
    "see siegel.extra_constraints"
)
MAX_REFINEMENTS = 32


# --------------------------------------------------------------------------- growth constants
def _poly_abs_coeffs(q: Sequence) -> List[Fraction]:
    return [abs(c) for c in binomial_to_monomial([Fraction(c) for c in q])]


def exponential_c1(q: Sequence, delta_prime: Fraction, c_0: Fraction) -> Fraction:
    """Rational ``c_1 >= sum |a_k| (k/(e delta'))^k + c_0``.

    Uses ``x^k e^(-delta' x) <= (k/(e delta'))^k`` termwise on the monomial coefficients.
    """
    total = Interval.point(0)
    for k, a in enumerate(_poly_abs_coeffs(q)):
        if a:
            total = total + a * (Interval.point(Fraction(k) / delta_prime) / exp(1)) ** k if k else total + a
    return Fraction(math.ceil(total.hi_fraction)) + c_0


def sublog_sup(q: Sequence, exponent: Fraction, extra: Fraction = Fraction(0), *, step: Fraction = Fraction(1, 32)) -> Fraction:
    """Rational upper bound for ``sup_{x >= 0} (p(x) + extra) exp(-rate(x))``.

    ``p(x) = sum |a_k| x^k`` and ``rate(x) = y / (log y)^exponent`` with
    ``y = max(x, e^exponent)``.  Both ``p`` and ``rate`` are nondecreasing,
    so on a cell ``[x_i, x_(i+1)]`` the quantity is at most
    ``(p(x_(i+1)) + extra) exp(-rate(x_i))``.  The grid in ``u = log x`` stops
    once ``u > exponent + 1`` and ``x rate'(x) >= deg p``: past that point the
    quantity is nonincreasing.
    """
    coeffs = _poly_abs_coeffs(q)
    deg = max((k for k, a in enumerate(coeffs) if a), default=0)
    N = Fraction(exponent)

    def p_at(x: Interval) -> Interval:
        acc = Interval.point(extra)
        for k, a in enumerate(coeffs):
            if a:
                acc = acc + a * x**k
        return acc

    def rate(u: Interval) -> Interval:
        u = u.max_with(N)
        return u.exp() / u ** Interval.point(N)

    u0 = N  # below e^N the rate is constant
    best = p_at(Interval.point(u0).exp()) * (-rate(Interval.point(u0))).exp()
    u = u0
    while True:
        nxt = u + step
        cell = p_at(Interval.point(nxt).exp()) * (-rate(Interval.point(u))).exp()
        best = best.max_with(cell)
        ui = Interval.point(nxt)
        slope = ui.exp() * (ui - N) / ui ** Interval.point(N + 1)  # x * rate'(x)
        if nxt > N + 1 and slope.certainly_ge(deg):
            break
        u = nxt
    return Fraction(math.ceil(best.hi_fraction))


# --------------------------------------------------------------------------- instances
@dataclass(frozen=True)
class Instance:
    data: SampleSeries
    cert: GrowthCertificate
    g: Continuation
    q: Tuple[Fraction, ...]
    dense: Optional[DenseSet] = None
    warnings: Tuple[str, ...] = field(default=())

    def certificate_json(self) -> dict:
        return {
            "growth": self.cert.to_json(),
            "continuation": self.g.to_json(),
            "c_0": str(self.data.c_0),
            "D": str(self.data.D),
            "series_mode": self.data.mode,
            "dense_set": None if self.dense is None else self.dense.to_json(),
        }


def _frac(x, name: str) -> Fraction:
    try:
        return Fraction(str(x))
    except (ValueError, ZeroDivisionError) as exc:
        raise SpecInvalid(f"{name}: cannot parse {x!r}") from exc


def _spec_q(spec: dict) -> List[Fraction]:
    if "q" in spec:
        q = [_frac(c, "q") for c in spec["q"]]
    elif "monomial" in spec:
        q = monomial_to_binomial([_frac(c, "monomial") for c in spec["monomial"]])
    else:
        raise SpecInvalid("instance spec needs 'q' (binomial coefficients) or 'monomial'")
    if not q:
        raise SpecInvalid("empty polynomial")
    if any(c.denominator != 1 for c in q):
        raise SpecInvalid("Q must be integer-valued (integer binomial coefficients)")
    return q


def dense_from_spec(spec: Optional[dict], horizon: int, epsilon, lam) -> DenseSet:
    spec = spec or {"generator": "primes"}
    if spec.get("generator") == "primes":
        return primes_up_to(horizon, epsilon=epsilon)
    if "elements" in spec:
        return from_elements(spec["elements"], lam, epsilon, horizon=horizon)
    raise SpecInvalid(f"unsupported A spec {spec!r}")


INSTANCE_KEYS = {
    "q", "monomial", "noise", "D", "c_0", "horizon", "mode", "A", "epsilon", "lambda", "seed", "delta", "start",
    "alpha", "eta",
}


def generate_instance(spec: dict) -> Instance:
    """Synthetic data ``v_n = Q(n) + eps_n`` with matching growth certificate.

    ``eps_n = u_n c_0 e^(-D n) (1 - 2^-10)`` with rational ``u_n`` in ``[-1, 1]``
    drawn from a seeded generator (``noise: "none"`` gives ``eps_n = 0``).
    ``theorem2`` instances carry exact integer values on the points of ``A`` only.
    """
    if not isinstance(spec, dict):
        raise SpecInvalid("instance spec must be a JSON object")
    unknown = set(spec) - INSTANCE_KEYS
    if unknown:
        raise SpecInvalid(f"unknown instance keys {sorted(unknown)}")
    q = _spec_q(spec)
    mode = spec.get("mode", THEOREM1)
    horizon = int(spec.get("horizon", 200))
    start = int(spec.get("start", 1))
    if horizon < start or start < 0:
        raise SpecInvalid("need 0 <= start <= horizon")
    c_0 = _frac(spec.get("c_0", 1), "c_0")
    D = _frac(spec.get("D", 3), "D")
    noise = spec.get("noise", "uniform")
    if noise not in ("uniform", "none"):
        raise SpecInvalid(f"noise must be 'uniform' or 'none', got {noise!r}")
    rng = random.Random(int(spec.get("seed", 0)))
    g = Continuation.from_binomial(q)
    notes: List[str] = []
    if mode == THEOREM1:
        delta = _frac(spec.get("delta", DEFAULT_DELTA), "delta")
        if not 0 < delta < 1:
            raise SpecInvalid("delta must lie in (0, 1)")
        delta_prime = delta / 2
        c_1 = exponential_c1(q, delta_prime, c_0)
        cert = GrowthCertificate(EXPONENTIAL, c_1, 2 * c_1, c_0, delta_prime=delta_prime, delta=delta, D=D)
        entries = []
        for n in range(start, horizon + 1):
            m = eval_binomial_univariate(q, n)
            eps = Fraction(0)
            if noise == "uniform":
                u = Fraction(rng.randint(-NOISE_GRAIN, NOISE_GRAIN), NOISE_GRAIN)
                eps = u * c_0 * exp(-D * n).lo_fraction * NOISE_SHRINK
            entries.append(Sample(n, m + eps, int(m)))
        data = SampleSeries(tuple(entries), c_0, D, NEAR_INTEGER)
        if not d_min().certainly_lt(D):
            msg = f"D = {D} <= 2 log 2 + 1: the analytic chain cannot certify this instance"
            warnings.warn(msg, RuntimeWarning, stacklevel=2)
            notes.append(msg)
        return Instance(data, cert, g, tuple(q), None, tuple(notes))
    if mode != THEOREM2:
        raise SpecInvalid(f"mode must be {THEOREM1!r} or {THEOREM2!r}")
    epsilon = _frac(spec.get("epsilon", "1/2"), "epsilon")
    lam = _frac(spec.get("lambda", 1), "lambda")
    A = dense_from_spec(spec.get("A"), horizon, epsilon, lam)
    alpha = _frac(spec.get("alpha", 1), "alpha")
    eta = _frac(spec.get("eta", 1), "eta")
    N = 2 * A.lam + 2
    c_1 = sublog_sup(q, N + alpha, c_0)
    c_2 = max(c_1, sublog_sup(q, N))
    cert = GrowthCertificate(SUBLOG, c_1, c_2, c_0, eta=eta, lam=A.lam, alpha=alpha)
    entries = [
        Sample(n, Fraction(m), int(m))
        for n in A.elements
        if start <= n <= horizon
        for m in [eval_binomial_univariate(q, n)]
    ]
    data = SampleSeries(tuple(entries), c_0, D, EXACT_ON_A)
    return Instance(data, cert, g, tuple(q), A, tuple(notes))


# --------------------------------------------------------------------------- degrees
def auto_degrees_theorem1(max_degree: int) -> DegreeParams:
    """Least ``T`` with ``(L+1)(M+1)/2 > L + M d``.

    Then ``P(X, Q(X))`` has degree at most ``L + M d`` and vanishes at more
    points than that, so every kernel vector vanishes on the whole curve
    ``Y = Q(X)`` whenever ``deg Q <= d``.
    """
    best = None
    for M in range(2, 12):  # M = 1 can never satisfy the inequality
        L = M + 2 if (M + 2) % 2 else M + 3
        while (L + 1) * (M + 1) <= 2 * (L + M * max_degree):
            L += 2
        cand = DegreeParams(L, M)
        if best is None or cand.T < best.T:
            best = cand
    return best


def auto_degrees_theorem2(A: DenseSet, max_degree: int, M: int = 1) -> DegreeParams:
    """Least odd ``L`` whose seed window ``A ∩ [eps T, T]`` has at least ``d + 2`` points."""
    L = max(3, M + 2)
    if L % 2 == 0:
        L += 1
    while True:
        p = DegreeParams(L, M)
        if p.T > A.horizon:
            raise InsufficientData(f"A is too sparse below {A.horizon} for a seed window of {max_degree + 2} points")
        k = A.count(p.T)
        if max_degree + 2 <= k < p.T:
            return p
        L += 2


# --------------------------------------------------------------------------- config / report
@dataclass
class RunConfig:
    mode: str = THEOREM1
    input: Optional[str] = None
    generate: Optional[dict] = None
    certificate: Optional[dict] = None
    horizon: Optional[int] = None
    epsilon: Fraction = Fraction(1, 2)
    lam: Fraction = Fraction(1)
    precision_bits: int = DEFAULT_PRECISION
    engine_mode: str = "both"
    L: Optional[int] = None
    M: Optional[int] = None
    max_degree: int = DEFAULT_MAX_DEGREE
    ell_max: int = 2
    out: Optional[str] = None

    def validate(self) -> None:
        if self.mode not in (THEOREM1, THEOREM2):
            raise SpecInvalid(f"mode must be {THEOREM1!r} or {THEOREM2!r}")
        if (self.input is None) == (self.generate is None):
            raise SpecInvalid("give exactly one of input and generate")
        if self.engine_mode not in ("both", "certificate", "oracle"):
            raise SpecInvalid("engine mode must be both, certificate or oracle")
        if (self.L is None) != (self.M is None):
            raise SpecInvalid("give both L and M or neither")
        if not 0 < self.epsilon < 1:
            raise SpecInvalid("epsilon must lie in (0, 1)")
        if self.precision_bits < 53:
            raise SpecInvalid("precision must be at least 53 bits")
        if self.max_degree < 0:
            raise SpecInvalid("max degree must be nonnegative")

    def echo(self) -> dict:
        d = asdict(self)
        d["epsilon"] = str(self.epsilon)
        d["lam"] = str(self.lam)
        return d


@dataclass
class Report:
    config: dict
    parameters: dict
    siegel: Optional[dict]
    induction: Optional[dict]
    recovered: Optional[dict]
    verdict: str
    failure: Optional[dict]
    notes: List[str]
    warnings: List[str]
    timestamp: str = ""
    recovered_poly: Optional[RecoveredPolynomial] = field(default=None, repr=False)
    run_result: Optional[InductionRun] = field(default=None, repr=False)

    @property
    def exit_code(self) -> int:
        return {POLYNOMIAL_RECOVERED: 0, INCONCLUSIVE: 2, REFUTED: 3}[self.verdict]

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA,
            "timestamp": self.timestamp,
            "config": self.config,
            "parameters": self.parameters,
            "siegel": self.siegel,
            "induction": self.induction,
            "recovered": self.recovered,
            "verdict": self.verdict,
            "failure": self.failure,
            "notes": self.notes,
            "warnings": self.warnings,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=1)


def _load_certificate(d: dict) -> Tuple[Optional[GrowthCertificate], Optional[Continuation], dict]:
    growth = GrowthCertificate.from_json(d["growth"]) if d.get("growth") else None
    g = Continuation.from_json(d["continuation"]) if d.get("continuation") else None
    return growth, g, d


def _ingest(config: RunConfig) -> Tuple[SampleSeries, Optional[GrowthCertificate], Optional[Continuation], Optional[DenseSet], List[str]]:
    if config.generate is not None:
        spec = dict(config.generate)
        spec.setdefault("mode", config.mode)
        if spec["mode"] != config.mode:
            raise SpecInvalid("generator mode disagrees with the run mode")
        if config.horizon is not None:
            spec.setdefault("horizon", config.horizon)
        if config.mode == THEOREM2:
            spec.setdefault("epsilon", str(config.epsilon))
            spec.setdefault("lambda", str(config.lam))
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", RuntimeWarning)
            inst = generate_instance(spec)
        return inst.data, inst.cert, inst.g, inst.dense, list(inst.warnings)
    try:
        text = Path(config.input).read_text()
    except OSError as exc:
        raise SpecInvalid(f"cannot read input: {exc}") from exc
    cert_d = config.certificate or {}
    growth, g, extra = _load_certificate(cert_d) if cert_d else (None, None, {})
    series_mode = extra.get("series_mode", NEAR_INTEGER if config.mode == THEOREM1 else EXACT_ON_A)
    data = SampleSeries.from_jsonl(
        text, c_0=_frac(extra.get("c_0", 1), "c_0"), D=_frac(extra.get("D", 3), "D"), mode=series_mode
    )
    dense = None
    if config.mode == THEOREM2:
        ds = extra.get("dense_set")
        if ds is not None:
            dense = DenseSet.from_json(ds)
        else:
            dense = from_elements(data.ns, config.lam, config.epsilon, horizon=data.last)
    notes = [] if growth is not None else ["no growth certificate supplied: oracle-only run"]
    return data, growth, g, dense, notes


def _parameters_block(params: DegreeParams, cert, data: SampleSeries, dense, config: RunConfig) -> dict:
    block: Dict[str, object] = {
        "L": params.L,
        "M": params.M,
        "T": params.T,
        "c_0": str(data.c_0),
        "D": str(data.D),
        "ell_max": config.ell_max,
        "precision_bits": config.precision_bits,
        "engine_mode": config.engine_mode,
    }
    if cert is not None:
        block["growth"] = cert.to_json()
        if cert.mode == EXPONENTIAL:
            block["delta"] = str(cert.delta)
    if dense is not None:
        block.update(
            {
                "lambda": str(dense.lam),
                "epsilon": str(dense.epsilon),
                "a": None if dense.a is None else str(dense.a),
                "b": None if dense.b is None else str(dense.b),
                "dense_set": dense.to_json(),
            }
        )
    return block


def _recover(config: RunConfig, data: SampleSeries, dense, horizon: int) -> RecoveredPolynomial:
    pts = [(e.n, e.m) for e in data if e.n <= horizon]
    if config.mode == THEOREM2:
        pts = [(n, m) for n, m in pts if dense is None or n in dense]
        return recover_dense(pts, max_degree=max(config.max_degree, 0))
    return recover(pts, max_degree=max(config.max_degree, 0))


def run_pipeline(config: RunConfig) -> Report:
    """ingest, seed-window Siegel solve, induction, recovery, report."""
    config.validate()
    notes = [BLASCHKE_INDEX_NOTE, STEP_INDEXING_NOTE, TAIL_NOTE]
    with working_precision(config.precision_bits):
        data, cert, g, dense, warn = _ingest(config)
        if not len(data):
            raise SpecInvalid("input contains no samples")
        if cert is not None:
            warn.extend(cert.warnings())
        if config.engine_mode == "certificate" and (cert is None or g is None):
            raise SpecInvalid("certificate-only runs need a growth certificate and a continuation")
        engine_mode = config.engine_mode if cert is not None and g is not None else "oracle"
        if cert is not None and g is None and config.engine_mode != "oracle":
            warn.append("no continuation supplied: the analytic chain is skipped, oracle-only run")
        if config.mode == THEOREM2:
            notes.extend([ELL_NOTE, DENSITY_NOTE])
            if dense is None:
                raise SpecInvalid("theorem2 needs a dense set")
        if config.L is not None:
            params = DegreeParams(config.L, config.M)
        elif config.mode == THEOREM1:
            params = auto_degrees_theorem1(config.max_degree)
        else:
            params = auto_degrees_theorem2(dense, config.max_degree)
        horizon = config.horizon if config.horizon is not None else data.last
        params_block = _parameters_block(params, cert, data, dense, config)
        params_block["horizon"] = horizon
        base = dict(
            config=config.echo(), parameters=params_block, notes=notes, warnings=warn,
            timestamp=_dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds"),
        )
        stage = {"name": "siegel", "siegel": None, "induction": None}
        try:
            T = params.T
            if horizon < T:
                raise SpecInvalid(f"horizon {horizon} is below the seed window top T = {T}")
            seed = list(range(-(-T // 2), T)) if dense is None else dense.seed_window(T)
            missing = [n for n in seed if n not in data]
            if missing:
                raise InsufficientData(f"seed window lacks data at n = {missing[:5]}")
            bound = siegel_height_bound(params, cert) if cert is not None else None
            constraints = list(seed)
            extra: List[int] = []
            while True:
                with warnings.catch_warnings():
                    warnings.simplefilter("ignore", RuntimeWarning)
                    sol = solve_small(build_system(data.points(constraints), params.L, params.M), bound=bound)
                stage.update(name="induction", siegel=dict(sol.to_json(), extra_constraints=list(extra)))
                result = run(
                    sol, data, cert, params, horizon, g,
                    mode=engine_mode, dense=dense, ell_max=config.ell_max,
                )
                n = _refinement_point(result)
                if n is None or n in constraints or len(constraints) + 1 >= params.T or len(extra) >= MAX_REFINEMENTS:
                    break
                constraints.append(n)
                extra.append(n)
            if extra:
                notes.append(REFINE_NOTE)
            stage["induction"] = result.to_json()
            if not result.all_zero:
                return Report(siegel=stage["siegel"], induction=stage["induction"], recovered=None,
                              verdict=INCONCLUSIVE, failure=result.failure, run_result=result, **base)
            stage["name"] = "recovery"
            Q = _recover(config, data, dense, horizon)
            verify(Q, [(e.n, e.m) for e in data if dense is None or e.n in dense])
            recovered = Q.to_json()
            recovered["integer_valued"] = integrality_check(Q)
            recovered["checked_points"] = Q.checked
            return Report(siegel=stage["siegel"], induction=stage["induction"], recovered=recovered,
                          verdict=POLYNOMIAL_RECOVERED, failure=None, recovered_poly=Q, run_result=result, **base)
        except SpecInvalid:
            raise
        except (CertificateMismatch, VerificationFailed) as exc:
            verdict = REFUTED
            failure = _failure(stage["name"], exc)
        except EngineError as exc:
            verdict = INCONCLUSIVE
            failure = _failure(stage["name"], exc)
        return Report(siegel=stage["siegel"], induction=stage["induction"], recovered=None,
                      verdict=verdict, failure=failure, **base)


def _refinement_point(result: InductionRun) -> Optional[int]:
    """The target where the exact oracle saw ``P(n, m_n) != 0``, if that ended the run."""
    if result.all_zero or not result.certificates:
        return None
    last = result[-1]
    if last.exact_value in (None, 0):
        return None
    return last.step_T


def _failure(stage: str, exc: Exception) -> dict:
    return {"stage": stage, "error": type(exc).__name__, "message": str(exc)}
