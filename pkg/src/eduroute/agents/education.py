"""Retrieval-augmented education agent.

One answer is one pass through the cascade: embed the question, pull the
retrieve_k nearest corpus entries from the index, rerank them down to
rerank_m, assemble the prompt, generate. Retrieval trouble degrades to a
no-context answer instead of failing the request; backend trouble produces
an apologetic error reply (the user turn is still recorded upstream).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Mapping

from ..core import Route, ServiceConfig, now_ms
from ..errors import BackendUnavailableError, RetrievalUnavailableError, ValidationError
from ..retrieval.documents import Document
from ..retrieval.hnsw import HnswIndex
from ..retrieval.rerank import rerank
from .prompts import AssembledPrompt, assemble_education_prompt
from .replies import AgentReply

logger = logging.getLogger(__name__)

APOLOGY = "抱歉，服务暂时不可用，请稍后再试。(Sorry, the service is temporarily unavailable.)"


@dataclass
class RetrievalHandle:
    """Shared mutable handle so a reindex can swap corpus and index atomically."""

    index: HnswIndex | None = None
    documents: Mapping[str, Document] = field(default_factory=dict)


@dataclass
class EducationRun:
    reply: AgentReply
    retrieval_ids: list[str]
    rerank_ids: list[str]
    prompt: AssembledPrompt | None


class EducationAgent:
    def __init__(
        self,
        handle: RetrievalHandle,
        embedder,
        backend,
        config: ServiceConfig,
        reranker=None,
        clock=now_ms,
    ) -> None:
        self.handle = handle
        self.embedder = embedder
        self.backend = backend
        self.config = config
        self.reranker = reranker
        self.clock = clock

    def run(self, question: str) -> EducationRun:
        if not question.strip():
            raise ValidationError("question must be non-empty")
        cfg = self.config

        hits = []
        degraded = False
        try:
            if self.handle.index is None:
                raise RetrievalUnavailableError("no index loaded")
            query = self.embedder.embed(question)
            hits = self.handle.index.search(query, k=cfg.retrieve_k, ef_search=cfg.hnsw_ef_search)
        except RetrievalUnavailableError as exc:
            logger.warning("retrieval unavailable, answering without contexts: %s", exc)
            degraded = True

        candidates = [
            (hit, self.handle.documents[hit.doc_id])
            for hit in hits
            if hit.doc_id in self.handle.documents
        ]
        reranked = rerank(question, candidates, m=cfg.rerank_m, scorer=self.reranker) if candidates else []
        if not reranked:
            degraded = True

        prompt = assemble_education_prompt(
            question,
            reranked,
            excerpt_budget=cfg.excerpt_budget,
            prompt_budget=cfg.prompt_budget,
        )
        contexts_used = tuple(r.doc_id for r in reranked)

        started = self.clock()
        try:
            text = self.backend.generate(prompt)
            reply = AgentReply(
                text=text,
                route=Route.EDUCATION,
                contexts_used=contexts_used,
                backend_latency_ms=self.clock() - started,
                degraded=degraded,
            )
        except BackendUnavailableError as exc:
            logger.error("generation backend failed: %s", exc)
            reply = AgentReply(
                text=APOLOGY,
                route=Route.EDUCATION,
                contexts_used=(),
                backend_latency_ms=self.clock() - started,
                degraded=True,
                error="backend_unavailable",
            )
        return EducationRun(
            reply=reply,
            retrieval_ids=[h.doc_id for h in hits],
            rerank_ids=list(contexts_used),
            prompt=prompt,
        )

    def answer(self, question: str) -> AgentReply:
        return self.run(question).reply
