"""End-to-end message flow: safety gate, intent router, agent dispatch.

The stage order is fixed and fail-closed: nothing reaches retrieval or a
generation backend unless the safety stage passed first. Every handled
message emits a RouteDecision that satisfies the domain invariants and an
audit trace (JSONL, one line per request, prompt stored as a hash only).

The clock and the request-id factory are injectable so that a scripted
backend plus a fake clock make the whole pipeline, traces included,
byte-reproducible.
"""

from __future__ import annotations

import json
import logging
import threading
import uuid
from dataclasses import dataclass
from pathlib import Path

from ..agents.education import EducationAgent
from ..agents.psychology import PsychologyAgent
from ..agents.replies import AgentReply
from ..classifiers.heads import IntentHead, SafetyHead
from ..core import (
    ChatTurn,
    Role,
    Route,
    RouteDecision,
    ServiceConfig,
    SessionStore,
    now_ms,
    validate_decision,
)
from ..errors import NotFoundError, RequestTimeout, UnavailableError, ValidationError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PipelineTrace:
    request_id: str
    decision: RouteDecision
    timings_ms: dict[str, int]
    reply_summary: str
    retrieval_ids: list[str] | None = None
    rerank_ids: list[str] | None = None
    prompt_hash: str | None = None

    def to_json(self) -> str:
        record = {
            "request_id": self.request_id,
            "decision": {
                "safety_score": round(self.decision.safety_score, 9),
                "safe": self.decision.safe,
                "intent_score": round(self.decision.intent_score, 9),
                "route": self.decision.route.value,
                "latency_ms": self.decision.latency_ms,
            },
            "timings_ms": self.timings_ms,
            "reply_summary": self.reply_summary,
        }
        if self.retrieval_ids is not None:
            record["retrieval_ids"] = self.retrieval_ids
        if self.rerank_ids is not None:
            record["rerank_ids"] = self.rerank_ids
        if self.prompt_hash is not None:
            record["prompt_hash"] = self.prompt_hash
        return json.dumps(record, ensure_ascii=False)


class TraceWriter:
    """Appends one JSON line per trace; writes are atomic per line."""

    def __init__(self, path: str | None) -> None:
        self._path = Path(path) if path else None
        self._lock = threading.Lock()

    def write(self, trace: PipelineTrace) -> None:
        if self._path is None:
            return
        line = trace.to_json() + "\n"
        with self._lock:
            with open(self._path, "a", encoding="utf-8") as fh:
                fh.write(line)


@dataclass
class ChatOutcome:
    session_id: str
    reply: AgentReply
    decision: RouteDecision
    trace: PipelineTrace
    contexts: list[tuple[str, str]]  # (doc_id, title) pairs for the wire


class Orchestrator:
    def __init__(
        self,
        store: SessionStore,
        safety: SafetyHead,
        intent: IntentHead,
        education: EducationAgent,
        psychology: PsychologyAgent,
        config: ServiceConfig,
        clock=now_ms,
        id_factory=lambda: uuid.uuid4().hex,
        trace_writer: TraceWriter | None = None,
    ) -> None:
        self.store = store
        self.safety = safety
        self.intent = intent
        self.education = education
        self.psychology = psychology
        self.config = config
        self.clock = clock
        self.id_factory = id_factory
        self.trace_writer = trace_writer or TraceWriter(None)

    def handle_message(self, session_id: str | None, text: str) -> ChatOutcome:
        started = self.clock()
        deadline = started + int(self.config.request_timeout_s * 1000)
        if not text.strip():
            raise ValidationError("message must be non-empty")

        if session_id:
            session = self.store.get(session_id)  # NotFoundError for unknown ids
        elif self.config.auto_create_sessions:
            session = self.store.create_session()
        else:
            raise NotFoundError("no session_id given and auto-create is disabled")

        timings: dict[str, int] = {}

        stage_start = self.clock()
        try:
            safety_score, safe = self.safety.classify(text)
        except UnavailableError as exc:
            # fail closed: an unjudgeable input never reaches later stages
            logger.error("safety stage unavailable, refusing: %s", exc)
            safety_score, safe = 1.0, False
        timings["safety_ms"] = self.clock() - stage_start
        self._check_deadline(deadline)

        if not safe:
            return self._refuse(session.id, text, safety_score, started, timings)

        stage_start = self.clock()
        intent_score, route = self.intent.classify(text)
        timings["intent_ms"] = self.clock() - stage_start
        self._check_deadline(deadline)

        history_snapshot = list(session.turns)
        stage_start = self.clock()
        if route is Route.EDUCATION:
            run = self.education.run(text)
            reply = run.reply
            retrieval_ids: list[str] | None = run.retrieval_ids
            rerank_ids: list[str] | None = run.rerank_ids
            prompt_hash = run.prompt.digest() if run.prompt is not None else None
        else:
            psy = self.psychology.run(history_snapshot, text)
            reply = psy.reply
            retrieval_ids = None
            rerank_ids = None
            prompt_hash = psy.prompt.digest()
        timings["agent_ms"] = self.clock() - stage_start
        self._check_deadline(deadline)

        self.store.append_turn(session.id, ChatTurn(role=Role.USER, text=text, timestamp=self.clock()))
        self.store.append_turn(
            session.id,
            ChatTurn(role=Role.ASSISTANT, text=reply.text, timestamp=self.clock(), route=route),
        )

        decision = RouteDecision(
            safety_score=safety_score,
            safe=True,
            intent_score=intent_score,
            route=route,
            latency_ms=self.clock() - started,
        )
        validate_decision(decision, self.config)
        timings["total_ms"] = decision.latency_ms

        trace = PipelineTrace(
            request_id=self.id_factory(),
            decision=decision,
            timings_ms=timings,
            reply_summary=reply.text[:80],
            retrieval_ids=retrieval_ids,
            rerank_ids=rerank_ids,
            prompt_hash=prompt_hash,
        )
        self.trace_writer.write(trace)
        contexts = self._context_titles(reply)
        return ChatOutcome(session.id, reply, decision, trace, contexts)

    def _refuse(
        self,
        session_id: str,
        text: str,
        safety_score: float,
        started: int,
        timings: dict[str, int],
    ) -> ChatOutcome:
        refusal = self.config.refusal_message
        self.store.append_turn(
            session_id, ChatTurn(role=Role.USER, text=text, timestamp=self.clock(), route=Route.REFUSED)
        )
        self.store.append_turn(
            session_id,
            ChatTurn(role=Role.ASSISTANT, text=refusal, timestamp=self.clock(), route=Route.REFUSED),
        )
        decision = RouteDecision(
            safety_score=safety_score,
            safe=False,
            intent_score=0.0,
            route=Route.REFUSED,
            latency_ms=self.clock() - started,
        )
        validate_decision(decision, self.config)
        timings["total_ms"] = decision.latency_ms
        trace = PipelineTrace(
            request_id=self.id_factory(),
            decision=decision,
            timings_ms=timings,
            reply_summary=refusal[:80],
        )
        self.trace_writer.write(trace)
        reply = AgentReply(text=refusal, route=Route.REFUSED)
        return ChatOutcome(session_id, reply, decision, trace, [])

    def _context_titles(self, reply: AgentReply) -> list[tuple[str, str]]:
        docs = self.education.handle.documents
        return [
            (doc_id, docs[doc_id].title if doc_id in docs else "")
            for doc_id in reply.contexts_used
        ]

    def _check_deadline(self, deadline: int) -> None:
        if self.clock() > deadline:
            raise RequestTimeout(
                f"request exceeded the {self.config.request_timeout_s:.0f}s budget"
            )
