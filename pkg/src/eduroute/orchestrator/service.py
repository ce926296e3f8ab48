"""HTTP face of the pipeline.

Endpoints:
    POST /v1/chat            {"session_id": optional, "message": "..."}
    GET  /v1/health          component readiness (degraded boot is allowed)
    GET  /v1/sessions/{id}   full turn history for one session
    POST /v1/admin/reindex   rebuild the vector index from a corpus JSONL
"""

from __future__ import annotations

import logging
import threading
import uuid
from dataclasses import dataclass, field
from pathlib import Path

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel

from ..agents.backends import make_backend
from ..agents.education import EducationAgent, RetrievalHandle
from ..agents.psychology import PsychologyAgent
from ..classifiers.heads import IntentHead, LinearScorer, RemoteScorer, SafetyHead
from ..classifiers.linear import load_model
from ..core import ServiceConfig, SessionStore, now_ms
from ..errors import (
    EdurouteError,
    NotFoundError,
    RequestTimeout,
    UnavailableError,
    ValidationError,
)
from ..retrieval.documents import load_corpus
from ..retrieval.embedding import HashedNgramEmbedder, RemoteEmbedder, embed_documents
from ..retrieval.hnsw import HnswParams, build_index, load_snapshot
from ..retrieval.rerank import RemoteReranker
from .pipeline import Orchestrator, TraceWriter

logger = logging.getLogger(__name__)


@dataclass
class ServiceState:
    config: ServiceConfig
    store: SessionStore
    orchestrator: Orchestrator
    handle: RetrievalHandle
    embedder: object
    components: dict[str, bool] = field(default_factory=dict)
    _reindex_lock: threading.Lock = field(default_factory=threading.Lock)

    def reindex(self, corpus_path: str | None = None) -> int:
        path = corpus_path or self.config.corpus_path
        if not path:
            raise ValidationError("no corpus path configured or given")
        with self._reindex_lock:
            docs = load_corpus(path)
            embedded = embed_documents(docs, self.embedder)
            index = build_index(embedded, params=_hnsw_params(self.config))
            # swap both references before readers pick them up
            self.handle.documents = {d.id: d for d in docs}
            self.handle.index = index
            self.components["index"] = True
        return len(docs)


def _hnsw_params(config: ServiceConfig) -> HnswParams:
    return HnswParams(
        m=config.hnsw_m,
        ef_construction=config.hnsw_ef_construction,
        ef_search=config.hnsw_ef_search,
        seed=config.hnsw_seed,
    )


def build_state(
    config: ServiceConfig,
    clock=now_ms,
    id_factory=lambda: uuid.uuid4().hex,
    safety_scorer=None,
    intent_scorer=None,
    backend=None,
    embedder=None,
    reranker=None,
) -> ServiceState:
    """Wire every component from config; explicit arguments win over paths.

    Missing pieces leave the service bootable but degraded; /v1/health says
    which ones. A missing safety model means every message is refused
    (fail-closed), not that the gate is skipped.
    """
    if safety_scorer is None and config.safety_model_path:
        safety_scorer = LinearScorer(load_model(config.safety_model_path))
    if safety_scorer is None and config.safety_scorer_endpoint:
        safety_scorer = RemoteScorer(config.safety_scorer_endpoint)
    if intent_scorer is None and config.intent_model_path:
        intent_scorer = LinearScorer(load_model(config.intent_model_path))
    if intent_scorer is None and config.intent_scorer_endpoint:
        intent_scorer = RemoteScorer(config.intent_scorer_endpoint)

    if embedder is None:
        if config.embedding_endpoint:
            embedder = RemoteEmbedder(config.embedding_endpoint, dim=config.embed_dim)
        else:
            embedder = HashedNgramEmbedder(dim=config.embed_dim)
    if reranker is None and config.reranker_endpoint:
        reranker = RemoteReranker(config.reranker_endpoint)
    if backend is None:
        backend = make_backend(
            config.backend, config.generation_endpoint, timeout=config.request_timeout_s
        )

    handle = RetrievalHandle()
    if config.index_path and Path(config.index_path).exists():
        handle.index = load_snapshot(config.index_path)
        if config.corpus_path:
            docs = load_corpus(config.corpus_path)
            handle.documents = {d.id: d for d in docs}
    elif config.corpus_path:
        docs = load_corpus(config.corpus_path)
        embedded = embed_documents(docs, embedder)
        handle.index = build_index(embedded, params=_hnsw_params(config))
        handle.documents = {d.id: d for d in docs}

    store = SessionStore(
        log_path=config.session_log_path or None, clock=clock, id_factory=id_factory
    )
    safety = SafetyHead(scorer=safety_scorer, threshold=config.safety_threshold)
    intent = IntentHead(scorer=intent_scorer, threshold=config.intent_threshold)
    education = EducationAgent(
        handle, embedder, backend, config, reranker=reranker, clock=clock
    )
    psychology = PsychologyAgent(backend, config, clock=clock)
    orchestrator = Orchestrator(
        store,
        safety,
        intent,
        education,
        psychology,
        config,
        clock=clock,
        id_factory=id_factory,
        trace_writer=TraceWriter(config.trace_path or None),
    )
    components = {
        "safety_model": safety_scorer is not None,
        "intent_model": intent_scorer is not None,
        "index": handle.index is not None,
        "backend": backend is not None,
    }
    return ServiceState(
        config=config,
        store=store,
        orchestrator=orchestrator,
        handle=handle,
        embedder=embedder,
        components=components,
    )


class ChatRequest(BaseModel):
    message: str
    session_id: str | None = None


class ReindexRequest(BaseModel):
    corpus_path: str | None = None


def create_app(state: ServiceState) -> FastAPI:
    app = FastAPI(title="eduroute", version="0.1.0")
    app.state.service = state

    @app.post("/v1/chat")
    def chat(req: ChatRequest):
        try:
            outcome = state.orchestrator.handle_message(req.session_id, req.message)
        except ValidationError as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        except NotFoundError as exc:
            raise HTTPException(status_code=404, detail=str(exc))
        except RequestTimeout as exc:
            raise HTTPException(status_code=504, detail=str(exc))
        except UnavailableError as exc:
            raise HTTPException(status_code=503, detail=str(exc))
        body = {
            "session_id": outcome.session_id,
            "reply": outcome.reply.text,
            "route": outcome.reply.route.value,
            "contexts": [{"id": doc_id, "title": title} for doc_id, title in outcome.contexts],
            "safety": {"safe": outcome.decision.safe},
        }
        if outcome.reply.error:
            body["error"] = outcome.reply.error
        return body

    @app.get("/v1/health")
    def health():
        ready = all(state.components.values())
        return {
            "status": "ready" if ready else "degraded",
            "components": dict(state.components),
        }

    @app.get("/v1/sessions/{session_id}")
    def get_session(session_id: str):
        try:
            session = state.store.get(session_id)
        except NotFoundError as exc:
            raise HTTPException(status_code=404, detail=str(exc))
        turns = []
        for turn in session.turns:
            record = {"role": turn.role.value, "text": turn.text, "ts": turn.timestamp}
            if turn.route is not None:
                record["route"] = turn.route.value
            turns.append(record)
        return {"session_id": session.id, "created_at": session.created_at, "turns": turns}

    @app.post("/v1/admin/reindex")
    def reindex(req: ReindexRequest):
        try:
            count = state.reindex(req.corpus_path)
        except ValidationError as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        except EdurouteError as exc:
            raise HTTPException(status_code=503, detail=str(exc))
        return {"status": "ok", "documents": count}

    return app
