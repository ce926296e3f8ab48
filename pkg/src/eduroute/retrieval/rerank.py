"""Second-stage scorer that reorders first-stage retrieval candidates.

The baseline scorer is character n-gram F1 between the question and each
candidate's title+text: cheap, deterministic, and fine-grained enough to
separate lexically-on-topic passages from merely nearby ones. A remote
reranker endpoint can replace it; if that endpoint fails, the cascade falls
back to the incoming similarity order rather than failing the request.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Sequence

import httpx

from ..classifiers.featurize import char_ngrams
from ..errors import UnavailableError, ValidationError
from .documents import Document, ScoredHit

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RerankedHit:
    doc_id: str
    score: float
    doc: Document


def ngram_f1(a: str, b: str) -> float:
    """Set F1 over character 2/3-grams; 0.0 when either side is blank."""
    a, b = a.strip(), b.strip()
    if not a or not b:
        return 0.0
    grams_a = set(char_ngrams(a))
    grams_b = set(char_ngrams(b))
    if not grams_a or not grams_b:
        return 0.0
    overlap = len(grams_a & grams_b)
    return 2.0 * overlap / (len(grams_a) + len(grams_b))


class OverlapReranker:
    def scores(self, question: str, docs: Sequence[Document]) -> list[float]:
        return [ngram_f1(question, d.title + "\n" + d.text) for d in docs]


class RemoteReranker:
    """Calls POST {"query": ..., "passages": [...]} -> {"scores": [...]}."""

    def __init__(self, endpoint: str, timeout: float = 30.0) -> None:
        if not endpoint:
            raise ValidationError("reranker endpoint must be non-empty")
        self.endpoint = endpoint
        self.timeout = timeout

    def scores(self, question: str, docs: Sequence[Document]) -> list[float]:
        passages = [d.title + "\n" + d.text for d in docs]
        try:
            resp = httpx.post(
                self.endpoint, json={"query": question, "passages": passages}, timeout=self.timeout
            )
            resp.raise_for_status()
            scores = resp.json()["scores"]
            if len(scores) != len(docs):
                raise ValueError(f"got {len(scores)} scores for {len(docs)} passages")
            return [float(s) for s in scores]
        except (httpx.HTTPError, KeyError, TypeError, ValueError) as exc:
            raise UnavailableError(f"rerank endpoint failed: {exc}")


def rerank(
    question: str,
    candidates: Sequence[tuple[ScoredHit, Document]],
    m: int,
    scorer=None,
) -> list[RerankedHit]:
    """Top-m candidates by rerank score (ties by doc id ascending).

    Fewer than m candidates is not an error; all of them come back reranked.
    A failing remote scorer degrades to the incoming similarity order.
    """
    if m < 1:
        raise ValidationError("m must be >= 1")
    if not candidates:
        return []
    scorer = scorer or OverlapReranker()
    docs = [doc for _, doc in candidates]
    try:
        scores = scorer.scores(question, docs)
    except UnavailableError as exc:
        logger.warning("reranker unavailable, falling back to retrieval order: %s", exc)
        return [
            RerankedHit(doc_id=hit.doc_id, score=hit.similarity, doc=doc)
            for hit, doc in candidates[:m]
        ]
    ranked = sorted(
        (RerankedHit(doc_id=doc.id, score=score, doc=doc) for score, doc in zip(scores, docs)),
        key=lambda r: (-r.score, r.doc_id),
    )
    return ranked[:m]
