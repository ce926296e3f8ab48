"""Generation backends behind one contract: ``generate(prompt) -> text``.

The scripted mock is a first-class backend, not just a test double: all
desk-scale verification of the pipeline rests on its being a pure function
of the assembled prompt. Its marker rules, in priority order:

  1. ``golddoc:<id>`` in the prompt: reply with the ``answer:<letter>``
     marker's letter when that doc id is among the prompt's context blocks,
     otherwise an "unsure" reply containing no standalone A-D.
  2. ``answer:<letter>``: reply with exactly that letter.
  3. Context blocks present: reply citing every context id in order.
  4. Otherwise: a fixed empathetic echo of the question.
"""

from __future__ import annotations

import re

import httpx

from ..core import Role
from ..errors import BackendUnavailableError, ValidationError
from .prompts import AssembledPrompt

_GOLDDOC = re.compile(r"golddoc:(\S+)")
_ANSWER = re.compile(r"answer:\s*([A-Da-d])\b")


class ScriptedMockBackend:
    kind = "scripted_mock"

    def generate(self, prompt: AssembledPrompt) -> str:
        rendered = prompt.render()
        gold = _GOLDDOC.search(rendered)
        answer = _ANSWER.search(rendered)
        if gold is not None:
            context_ids = {b.doc_id for b in prompt.context_blocks}
            if answer is not None and gold.group(1) in context_ids:
                return answer.group(1).upper()
            return "资料不足，无法确定。(Not enough material to decide.)"
        if answer is not None:
            return answer.group(1).upper()
        if prompt.context_blocks:
            cited = " ".join(f"[{b.doc_id}]" for b in prompt.context_blocks)
            return f"根据 {cited} 的资料：{prompt.context_blocks[0].title}。"
        head = prompt.question.strip()[:60]
        return f"我听到你说：{head}。慢慢来，我在这里听你讲。"


class ConstantLetterBackend:
    """Always answers with one fixed letter; the adversarial MCQ baseline."""

    kind = "constant_letter"

    def __init__(self, letter: str) -> None:
        if letter.upper() not in ("A", "B", "C", "D"):
            raise ValidationError(f"letter must be one of A-D, got {letter!r}")
        self.letter = letter.upper()

    def generate(self, prompt: AssembledPrompt) -> str:
        return self.letter


class RemoteBackend:
    """POST {"system": ..., "messages": [{"role", "text"}...]} -> {"text": ...}."""

    kind = "remote_endpoint"

    def __init__(self, endpoint: str, timeout: float = 30.0) -> None:
        if not endpoint:
            raise ValidationError("generation endpoint must be non-empty")
        self.endpoint = endpoint
        self.timeout = timeout

    def generate(self, prompt: AssembledPrompt) -> str:
        messages = [{"role": t.role.value, "text": t.text} for t in prompt.history]
        messages.append({"role": Role.USER.value, "text": prompt.user_text()})
        try:
            resp = httpx.post(
                self.endpoint,
                json={"system": prompt.system, "messages": messages},
                timeout=self.timeout,
            )
            resp.raise_for_status()
            text = resp.json()["text"]
        except (httpx.HTTPError, KeyError, TypeError) as exc:
            raise BackendUnavailableError(f"generation endpoint failed: {exc}")
        if not isinstance(text, str) or not text.strip():
            raise BackendUnavailableError("generation endpoint returned empty text")
        return text


def make_backend(name: str, endpoint: str = "", timeout: float = 30.0):
    """Backend factory for config values: scripted_mock, constant:<L>, remote."""
    if name == "scripted_mock":
        return ScriptedMockBackend()
    if name.startswith("constant:"):
        return ConstantLetterBackend(name.split(":", 1)[1])
    if name == "remote":
        return RemoteBackend(endpoint, timeout=timeout)
    raise ValidationError(f"unknown backend: {name}")
