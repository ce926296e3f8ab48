"""Safety and intent gates: threshold logic over a pluggable scorer.

A scorer is anything with ``score(text) -> float`` returning P(positive).
The bundled scorer wraps a trained LinearClassifier; RemoteScorer swaps in an
external model over HTTP without touching the gating logic.
"""

from __future__ import annotations

from dataclasses import dataclass

import httpx

from ..core import Route
from ..errors import UnavailableError, ValidationError
from .linear import LinearClassifier, predict_proba


class LinearScorer:
    def __init__(self, classifier: LinearClassifier) -> None:
        self.classifier = classifier

    def score(self, text: str) -> float:
        return predict_proba(self.classifier, text)


class RemoteScorer:
    """Scores text via POST {"text": ...} -> {"score": ...}."""

    def __init__(self, endpoint: str, timeout: float = 10.0) -> None:
        if not endpoint:
            raise ValidationError("remote scorer endpoint must be non-empty")
        self.endpoint = endpoint
        self.timeout = timeout

    def score(self, text: str) -> float:
        try:
            resp = httpx.post(self.endpoint, json={"text": text}, timeout=self.timeout)
            resp.raise_for_status()
            return float(resp.json()["score"])
        except (httpx.HTTPError, KeyError, TypeError, ValueError) as exc:
            raise UnavailableError(f"remote scorer failed: {exc}")


@dataclass
class SafetyHead:
    """Stage 1 of every pipeline run. Positive class = safe.

    The reported safety_score is the probability the input is unsafe. Scores
    exactly at the threshold count as unsafe (fail-closed tie-break).
    """

    scorer: object | None
    threshold: float = 0.5

    def classify(self, text: str) -> tuple[float, bool]:
        if self.scorer is None:
            raise UnavailableError("safety model not loaded")
        safety_score = 1.0 - self.scorer.score(text)
        return safety_score, safety_score < self.threshold


@dataclass
class IntentHead:
    """Education-vs-psychology router. Positive class = education.

    Ties go to education, the minority class the router exists to protect.
    """

    scorer: object | None
    threshold: float = 0.5

    def classify(self, text: str) -> tuple[float, Route]:
        if self.scorer is None:
            raise UnavailableError("intent model not loaded")
        intent_score = self.scorer.score(text)
        route = Route.EDUCATION if intent_score >= self.threshold else Route.PSYCHOLOGY
        return intent_score, route
