"""Prompt assembly for both agents.

Assembly is a pure function: the same question, contexts, and history always
render to a byte-identical string. Templates live in templates.txt next to
this module; they are versioned data, not configuration.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from typing import Sequence

from ..core import ChatTurn
from ..errors import ValidationError
from ..retrieval.rerank import RerankedHit

DEFAULT_EXCERPT_BUDGET = 800
DEFAULT_PROMPT_BUDGET = 6000


@dataclass(frozen=True)
class ContextBlock:
    doc_id: str
    title: str
    excerpt: str


@dataclass(frozen=True)
class AssembledPrompt:
    system: str
    question: str
    context_blocks: tuple[ContextBlock, ...] = ()
    history: tuple[ChatTurn, ...] = ()
    prompt_budget: int = DEFAULT_PROMPT_BUDGET
    _user_text: str = field(default="", repr=False)

    def render(self) -> str:
        text = self.system + "\n\n" + self._user_text
        return text[: self.prompt_budget]

    def user_text(self) -> str:
        budget = self.prompt_budget - len(self.system) - 2
        return self._user_text[: max(budget, 0)]

    def digest(self) -> str:
        return hashlib.sha256(self.render().encode("utf-8")).hexdigest()


@lru_cache(maxsize=1)
def load_templates() -> dict[str, str]:
    raw = resources.files("eduroute.agents").joinpath("templates.txt").read_text("utf-8")
    sections: dict[str, str] = {}
    name: str | None = None
    lines: list[str] = []
    for line in raw.splitlines():
        if line.startswith("#") and name is None:
            continue
        if line.startswith("[") and line.rstrip().endswith("]"):
            if name is not None:
                sections[name] = "\n".join(lines).strip("\n")
            name = line.strip()[1:-1]
            lines = []
        elif name is not None:
            lines.append(line)
    if name is not None:
        sections[name] = "\n".join(lines).strip("\n")
    return sections


def assemble_education_prompt(
    question: str,
    contexts: Sequence[RerankedHit],
    excerpt_budget: int = DEFAULT_EXCERPT_BUDGET,
    prompt_budget: int = DEFAULT_PROMPT_BUDGET,
) -> AssembledPrompt:
    """Fixed system instruction, context blocks in rerank order, the question.

    Each excerpt is cut to ``excerpt_budget`` characters (a slice of code
    points, so the cut never splits a character).
    """
    if not question.strip():
        raise ValidationError("question must be non-empty")
    tpl = load_templates()
    blocks = tuple(
        ContextBlock(doc_id=hit.doc_id, title=hit.doc.title, excerpt=hit.doc.text[:excerpt_budget])
        for hit in contexts
    )
    if blocks:
        rendered_blocks = "\n\n".join(
            tpl["education.context_block"].format(doc_id=b.doc_id, title=b.title, excerpt=b.excerpt)
            for b in blocks
        )
    else:
        rendered_blocks = tpl["education.no_context"]
    user = tpl["education.user"].format(contexts=rendered_blocks, question=question)
    return AssembledPrompt(
        system=tpl["education.system"],
        question=question,
        context_blocks=blocks,
        prompt_budget=prompt_budget,
        _user_text=user,
    )


def render_history(turns: Sequence[ChatTurn]) -> str:
    return "\n".join(f"{t.role.value}: {t.text}" for t in turns)


def assemble_psychology_prompt(
    history: Sequence[ChatTurn],
    question: str,
    window: int,
    prompt_budget: int = DEFAULT_PROMPT_BUDGET,
) -> AssembledPrompt:
    """Empathetic system instruction plus the last ``window`` turns, in order."""
    if not question.strip():
        raise ValidationError("question must be non-empty")
    if window < 1:
        raise ValidationError("window must be >= 1")
    tpl = load_templates()
    kept = tuple(history[-window:])
    rendered = render_history(kept) if kept else tpl["psychology.no_history"]
    user = tpl["psychology.user"].format(history=rendered, question=question)
    return AssembledPrompt(
        system=tpl["psychology.system"],
        question=question,
        history=kept,
        prompt_budget=prompt_budget,
        _user_text=user,
    )
