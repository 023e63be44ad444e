"""Certify eventually-polynomial integer data via auxiliary polynomials and recover the polynomial."""

from __future__ import annotations

from .binom_poly import BinomialPoly2, DegreeParams, binom_eval, poly_eval_exact, poly_eval_interval
from .bounds import blaschke_rhs, blaschke_terms, polydiff_bound, tijdeman_lower_bound
from .certificates import GrowthCertificate, Sample, SampleSeries
from .continuation import Continuation, g_enclosure
from .dense_sets import DenseSet, calibrate_density, primes_up_to
from .errors import EngineError, SpecInvalid
from .induction import InductionRun, PropagationCertificate, base_case, choose_parameters, inductive_step, run
from .interval import Interval
from .pipeline import Report, RunConfig, generate_instance, run_pipeline
from .recovery import RecoveredPolynomial, finite_differences, integrality_check, recover, recover_dense
from .siegel import SiegelSolution, build_system, siegel_height_bound, solve_small

__all__ = [
    "BinomialPoly2", "DegreeParams", "binom_eval", "poly_eval_exact", "poly_eval_interval",
    "blaschke_rhs", "blaschke_terms", "polydiff_bound", "tijdeman_lower_bound",
    "GrowthCertificate", "Sample", "SampleSeries", "Continuation", "g_enclosure",
    "DenseSet", "calibrate_density", "primes_up_to", "EngineError", "SpecInvalid",
    "InductionRun", "PropagationCertificate", "base_case", "choose_parameters", "inductive_step", "run",
    "Interval", "Report", "RunConfig", "generate_instance", "run_pipeline",
    "RecoveredPolynomial", "finite_differences", "integrality_check", "recover", "recover_dense",
    "SiegelSolution", "build_system", "siegel_height_bound", "solve_small",
]
__version__ = "0.1.0"
