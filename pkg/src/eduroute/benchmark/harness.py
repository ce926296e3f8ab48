"""Runs a suite of multiple-choice items through an answering function.

Scoring is conservative: a reply with no extractable letter, or any error
while answering, counts as incorrect and the run keeps going. Aggregation
is order-independent, so items may be answered concurrently.
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal
import re
from typing import Callable, Sequence

from ..agents.replies import AgentReply
from ..errors import EdurouteError, ValidationError
from .suite import LETTERS, BenchmarkItem, Level

logger = logging.getLogger(__name__)

# a standalone letter: not glued to other ASCII alphanumerics on either side
_LETTER = re.compile(r"(?<![A-Za-z0-9])([A-Da-d])(?![A-Za-z0-9])")

_LEVEL_ORDER = {Level.PRIMARY: 0, Level.MIDDLE: 1, Level.HIGH: 2}


@dataclass(frozen=True)
class SubjectReport:
    subject: str
    level: Level
    n: int
    correct: int
    accuracy: float  # percent, one decimal, half-up

    def __post_init__(self) -> None:
        if self.n <= 0:
            raise ValidationError("subject report needs n > 0")


@dataclass(frozen=True)
class ItemResult:
    item_id: str
    extracted: str | None
    correct: bool


def percent(correct: int, n: int) -> float:
    """100 * correct / n, rounded half-up to one decimal."""
    value = Decimal(correct * 100) / Decimal(n)
    return float(value.quantize(Decimal("0.1"), rounding=ROUND_HALF_UP))


def format_mcq_prompt(item: BenchmarkItem) -> str:
    """Question, the four labeled choices, and a single-letter instruction."""
    lines = [item.question.strip()]
    for letter, choice in zip(LETTERS, item.choices):
        lines.append(f"{letter}. {' '.join(choice.split())}")
    lines.append("请从 A、B、C、D 中选出正确答案，只回答一个字母。(Answer with a single letter A-D.)")
    return "\n".join(lines)


def extract_answer(reply_text: str) -> str | None:
    """First standalone A-D in the reply, case-insensitive; None if absent."""
    match = _LETTER.search(reply_text)
    return match.group(1).upper() if match else None


def mcq_query(item: BenchmarkItem, marker_mode: str | None = None) -> str:
    """The exact text sent to the answering agent for this item.

    marker_mode drives the scripted backends used for self-checks:
    "answer" embeds the gold letter, "golddoc" additionally embeds the gold
    document id so the mock only answers when retrieval surfaced it.
    """
    base = format_mcq_prompt(item)
    if marker_mode is None:
        return base
    if marker_mode == "answer":
        return f"{base}\nanswer:{item.answer}"
    if marker_mode == "golddoc":
        if not item.gold_doc:
            raise ValidationError(f"item {item.id} has no gold_doc; cannot use golddoc markers")
        return f"{base}\ngolddoc:{item.gold_doc} answer:{item.answer}"
    raise ValidationError(f"unknown marker_mode: {marker_mode}")


def run_suite(
    items: Sequence[BenchmarkItem],
    answer_fn: Callable[[str], AgentReply],
    marker_mode: str | None = None,
    workers: int = 1,
) -> tuple[list[SubjectReport], list[ItemResult]]:
    if not items:
        raise ValidationError("no items to evaluate")

    def evaluate(item: BenchmarkItem) -> ItemResult:
        try:
            reply = answer_fn(mcq_query(item, marker_mode))
            letter = extract_answer(reply.text)
        except EdurouteError as exc:
            logger.warning("item %s failed to answer, scored incorrect: %s", item.id, exc)
            return ItemResult(item_id=item.id, extracted=None, correct=False)
        return ItemResult(item_id=item.id, extracted=letter, correct=letter == item.answer)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(evaluate, items))
    else:
        results = [evaluate(item) for item in items]

    by_id = {r.item_id: r for r in results}
    groups: dict[tuple[Level, str], list[BenchmarkItem]] = {}
    for item in items:
        groups.setdefault((item.level, item.subject), []).append(item)

    reports = []
    for (level, subject), members in groups.items():
        correct = sum(1 for it in members if by_id[it.id].correct)
        reports.append(
            SubjectReport(
                subject=subject,
                level=level,
                n=len(members),
                correct=correct,
                accuracy=percent(correct, len(members)),
            )
        )
    reports.sort(key=lambda r: (_LEVEL_ORDER[r.level], r.subject))
    return reports, results
