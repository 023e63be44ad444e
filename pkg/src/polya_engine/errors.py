"""Exception hierarchy shared by every stage of the engine."""

from __future__ import annotations


class EngineError(Exception):
    """Base class for all structured engine failures."""

    stage = "engine"


class LemmaHypothesisError(EngineError, ValueError):
    """A bound was requested outside the hypotheses of the lemma it implements."""

    stage = "bounds"


class DuplicatePoint(EngineError, ValueError):
    stage = "bounds"


class PointOnBoundary(EngineError, ValueError):
    stage = "bounds"


class OverdeterminedSystem(EngineError, ValueError):
    stage = "siegel"


class DuplicateNode(EngineError, ValueError):
    stage = "siegel"


class EmptyKernel(EngineError, RuntimeError):
    """Internal error: an underdetermined exact system always has a kernel."""

    stage = "siegel"


class InsufficientData(EngineError):
    stage = "induction"


class CertificateMismatch(EngineError):
    """The data or the continuation contradicts the supplied growth certificate."""

    stage = "induction"


class SoundnessViolation(EngineError, AssertionError):
    """An analytic certificate concluded zero but the exact value is nonzero."""

    stage = "induction"


class GapTooLarge(EngineError):
    stage = "induction"


class UnsupportedContinuation(EngineError, TypeError):
    stage = "induction"


class EmptyWindow(EngineError):
    stage = "dense_sets"


class HorizonExhausted(EngineError, LookupError):
    stage = "dense_sets"


class SequenceTooShort(EngineError, ValueError):
    stage = "recovery"


class NoPolynomialFit(EngineError):
    stage = "recovery"


class VerificationFailed(EngineError):
    stage = "recovery"


class SpecInvalid(EngineError, ValueError):
    stage = "input"
