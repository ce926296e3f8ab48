"""Multi-turn psychology agent: recent history plus the new message, no retrieval."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Sequence

from ..core import ChatTurn, Route, ServiceConfig, now_ms
from ..errors import BackendUnavailableError, ValidationError
from .education import APOLOGY
from .prompts import AssembledPrompt, assemble_psychology_prompt
from .replies import AgentReply

logger = logging.getLogger(__name__)


@dataclass
class PsychologyRun:
    reply: AgentReply
    prompt: AssembledPrompt


class PsychologyAgent:
    def __init__(self, backend, config: ServiceConfig, clock=now_ms) -> None:
        self.backend = backend
        self.config = config
        self.clock = clock

    def run(self, history: Sequence[ChatTurn], question: str) -> PsychologyRun:
        if not question.strip():
            raise ValidationError("question must be non-empty")
        prompt = assemble_psychology_prompt(
            history,
            question,
            window=self.config.history_window,
            prompt_budget=self.config.prompt_budget,
        )
        started = self.clock()
        try:
            text = self.backend.generate(prompt)
            reply = AgentReply(
                text=text,
                route=Route.PSYCHOLOGY,
                backend_latency_ms=self.clock() - started,
            )
        except BackendUnavailableError as exc:
            logger.error("generation backend failed: %s", exc)
            reply = AgentReply(
                text=APOLOGY,
                route=Route.PSYCHOLOGY,
                backend_latency_ms=self.clock() - started,
                degraded=True,
                error="backend_unavailable",
            )
        return PsychologyRun(reply=reply, prompt=prompt)

    def answer(self, history: Sequence[ChatTurn], question: str) -> AgentReply:
        return self.run(history, question).reply
