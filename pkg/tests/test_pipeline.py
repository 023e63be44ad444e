from __future__ import annotations

import json
import warnings
from fractions import Fraction

import pytest

from polya_engine.binom_poly import eval_binomial_univariate
from polya_engine.certificates import EXPONENTIAL, SUBLOG
from polya_engine.errors import SpecInvalid
from polya_engine.interval import exp
from polya_engine.pipeline import (
    INCONCLUSIVE,
    POLYNOMIAL_RECOVERED,
    REFUTED,
    RunConfig,
    auto_degrees_theorem1,
    auto_degrees_theorem2,
    exponential_c1,
    generate_instance,
    run_pipeline,
    sublog_sup,
)
from polya_engine.dense_sets import primes_up_to
from polya_engine.recovery import verify


def test_generate_squares():
    inst = generate_instance({"monomial": [0, 0, 1], "D": 3, "horizon": 50})
    assert inst.cert.mode == EXPONENTIAL
    assert len(inst.data) == 50
    for s in inst.data:
        assert s.m == s.n**2
        assert exp(-3 * s.n).certainly_gt(abs(s.v - s.m))
    inst.data.check()


def test_generate_without_noise():
    inst = generate_instance({"q": [1, 2, 3], "noise": "none", "horizon": 30})
    assert all(s.v == s.m for s in inst.data)


def test_generate_low_D_warns():
    with pytest.warns(RuntimeWarning):
        inst = generate_instance({"q": [0, 1], "D": 2, "horizon": 30})
    assert inst.warnings


def test_generate_dense():
    inst = generate_instance({"q": [1, 0, 3], "mode": "theorem2", "horizon": 2000})
    assert inst.cert.mode == SUBLOG
    assert [s.n for s in inst.data] == list(primes_up_to(2000).elements)
    assert all(s.v == s.m == eval_binomial_univariate([1, 0, 3], s.n) for s in inst.data)


@pytest.mark.parametrize(
    "spec",
    [
        {},
        {"q": [Fraction(1, 2)]},
        {"q": [1], "noise": "gaussian"},
        {"q": [1], "mode": "theorem3"},
        {"q": [1], "bogus": True},
        {"q": [1], "delta": 2},
        {"q": [1], "horizon": 0, "start": 5},
    ],
)
def test_generate_rejects_bad_specs(spec):
    with pytest.raises(SpecInvalid):
        generate_instance({k: (str(v) if isinstance(v, Fraction) else v) for k, v in spec.items()})


def test_exponential_c1_dominates_samples():
    q = [3, -7, 0, 4]
    dp = Fraction(1, 128)
    c1 = exponential_c1(q, dp, Fraction(1))
    for x in range(0, 3000, 7):
        val = abs(eval_binomial_univariate(q, x)) + 1
        assert (c1 * exp(dp * x)).certainly_gt(val)


def test_sublog_sup_dominates_samples():
    q = [1, 0, 3]
    N = Fraction(4)
    c = sublog_sup(q, N)
    for x in [1, 10, 55, 100, 1000, 5000, 10**4, 10**5]:
        from polya_engine.interval import Interval

        xi = Interval.point(max(x, 55))
        rate = xi / xi.log() ** 4
        val = abs(eval_binomial_univariate(q, x))
        assert (c * rate.exp()).certainly_ge(val)


def test_auto_degrees():
    p = auto_degrees_theorem1(4)
    assert (p.L + 1) * (p.M + 1) > 2 * (p.L + p.M * 4)
    assert p.T == 48
    assert auto_degrees_theorem1(8).T <= 96
    q = auto_degrees_theorem2(primes_up_to(2000), 4)
    assert (q.L, q.M, q.T) == (21, 1, 44)


def test_theorem1_demo():
    r = run_pipeline(RunConfig(generate={"monomial": [0, 0, 1]}))
    assert r.verdict == POLYNOMIAL_RECOVERED and r.exit_code == 0
    assert r.recovered["binom_coeffs"] == ["0", "1", "2"]
    assert all(c.is_zero for c in r.run_result)


def test_theorem2_demo():
    r = run_pipeline(RunConfig(mode="theorem2", generate={"q": [1, 0, 3], "horizon": 2000}))
    assert r.verdict == POLYNOMIAL_RECOVERED
    assert r.recovered["binom_coeffs"] == ["1", "0", "3"]
    assert r.parameters["dense_set"]["calibration"]["status"].startswith("calibrated on range")


def test_empty_input(tmp_path):
    f = tmp_path / "empty.jsonl"
    f.write_text("")
    with pytest.raises(SpecInvalid):
        run_pipeline(RunConfig(input=str(f)))


def test_config_validation():
    with pytest.raises(SpecInvalid):
        run_pipeline(RunConfig())
    with pytest.raises(SpecInvalid):
        run_pipeline(RunConfig(generate={"q": [1]}, L=5))
    with pytest.raises(SpecInvalid):
        run_pipeline(RunConfig(generate={"q": [1]}, engine_mode="fast"))
    with pytest.raises(SpecInvalid):
        run_pipeline(RunConfig(generate={"q": [1], "horizon": 20}))


def _write_instance(tmp_path, spec, tamper=None):
    inst = generate_instance(spec)
    lines = inst.data.to_jsonl().splitlines()
    if tamper:
        rows = [json.loads(x) for x in lines]
        tamper(rows)
        lines = [json.dumps(r) for r in rows]
    data = tmp_path / "data.jsonl"
    data.write_text("\n".join(lines) + "\n")
    return str(data), inst.certificate_json()


def test_ingest_with_certificate(tmp_path):
    data, cert = _write_instance(tmp_path, {"q": [5, -3, 2], "horizon": 120})
    r = run_pipeline(RunConfig(input=data, certificate=cert))
    assert r.verdict == POLYNOMIAL_RECOVERED
    assert r.recovered["binom_coeffs"] == ["5", "-3", "2"]


def test_refuted_data(tmp_path):
    def bump(rows):
        rows[100]["m"] += 1
        rows[100]["v"] = str(rows[100]["m"])

    data, cert = _write_instance(tmp_path, {"q": [0, 1], "horizon": 150}, bump)
    r = run_pipeline(RunConfig(input=data, certificate=cert))
    assert r.verdict == REFUTED and r.exit_code == 3
    assert r.failure["error"] == "CertificateMismatch"


def test_oracle_only_breaks_are_not_recovered(tmp_path):
    def bump(rows):
        rows[100]["m"] += 1
        rows[100]["v"] = str(Fraction(rows[100]["v"]) + 1)

    data, _ = _write_instance(tmp_path, {"q": [0, 1], "horizon": 150}, bump)
    r = run_pipeline(RunConfig(input=data, engine_mode="oracle"))
    # the glitch is absorbed as a Siegel constraint; exact verification then rejects Q
    assert r.siegel["extra_constraints"] == [101]
    assert r.verdict == REFUTED and r.exit_code == 3
    assert r.failure["stage"] == "recovery" and r.failure["error"] == "VerificationFailed"


def test_refinement_when_seed_window_is_thin():
    r = run_pipeline(RunConfig(mode="theorem2", generate={"q": [-27], "horizon": 400}))
    assert r.verdict == POLYNOMIAL_RECOVERED
    assert r.recovered["binom_coeffs"] == ["-27"]
    assert r.siegel["extra_constraints"] == [47]
    assert all(c.exact_value == 0 for c in r.run_result)
    assert any("extra_constraints" in note for note in r.notes)


def test_non_polynomial_data_is_not_recovered(tmp_path):
    f = tmp_path / "pow.jsonl"
    f.write_text("".join(json.dumps({"n": n, "v": str(3**n), "m": 3**n}) + "\n" for n in range(1, 80)))
    r = run_pipeline(RunConfig(input=str(f), engine_mode="oracle"))
    assert r.verdict != POLYNOMIAL_RECOVERED


def test_determinism():
    cfg = {"generate": {"q": [2, 0, 1], "seed": 9, "horizon": 80}}
    a = run_pipeline(RunConfig(**cfg)).to_json()
    b = run_pipeline(RunConfig(**cfg)).to_json()
    a.pop("timestamp")
    b.pop("timestamp")
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)


def test_verdict_soundness_rechecks(tmp_path):
    data, cert = _write_instance(tmp_path, {"q": [-4, 0, 0, 1], "horizon": 100})
    r = run_pipeline(RunConfig(input=data, certificate=cert))
    assert r.verdict == POLYNOMIAL_RECOVERED
    pts = [(json.loads(x)["n"], json.loads(x)["m"]) for x in open(data)]
    assert verify(r.recovered_poly, pts) == len(pts)


def test_report_schema():
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        r = run_pipeline(RunConfig(generate={"q": [1, 1], "horizon": 60}))
    d = json.loads(r.dumps())
    assert d["schema"] == "polya-engine/1"
    assert set(d) >= {"config", "parameters", "siegel", "induction", "recovered", "verdict", "timestamp"}
    assert d["siegel"]["within_bound"] is True
    assert any("k != i" in n for n in d["notes"])


def test_certificate_without_continuation(tmp_path):
    data, cert = _write_instance(tmp_path, {"monomial": [0, 0, 1], "horizon": 60})
    cert.pop("continuation")
    r = run_pipeline(RunConfig(input=data, certificate=cert, horizon=60))
    assert r.verdict == POLYNOMIAL_RECOVERED
    assert any("continuation" in w for w in r.warnings)
    with pytest.raises(SpecInvalid):
        run_pipeline(RunConfig(input=data, certificate=cert, horizon=60, engine_mode="certificate"))
