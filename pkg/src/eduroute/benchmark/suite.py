"""Multiple-choice suite loading and validation.

Suite JSONL, one item per line:

    {"id": "...", "level": "primary", "subject": "Chinese",
     "question": "...", "choices": ["...", "...", "...", "..."], "answer": "C"}

An optional "gold_doc" key names the corpus document an item is written
against; retrieval-aware mocks and survival analyses use it.
"""

from __future__ import annotations

import enum
import json
import os
from dataclasses import dataclass

from ..errors import ValidationError

LETTERS = ("A", "B", "C", "D")


class Level(str, enum.Enum):
    PRIMARY = "primary"
    MIDDLE = "middle"
    HIGH = "high"


@dataclass(frozen=True)
class BenchmarkItem:
    id: str
    level: Level
    subject: str
    question: str
    choices: tuple[str, str, str, str]
    answer: str
    gold_doc: str | None = None

    def __post_init__(self) -> None:
        if not self.id:
            raise ValidationError("item id must be non-empty")
        if len(self.choices) != 4:
            raise ValidationError(f"item {self.id}: exactly 4 choices required, got {len(self.choices)}")
        if self.answer not in LETTERS:
            raise ValidationError(f"item {self.id}: answer must be one of A-D, got {self.answer!r}")
        if not self.question.strip():
            raise ValidationError(f"item {self.id}: question must be non-empty")
        if not isinstance(self.level, Level):
            object.__setattr__(self, "level", Level(self.level))


def load_suite(path: str | os.PathLike) -> list[BenchmarkItem]:
    items: list[BenchmarkItem] = []
    seen: set[str] = set()
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                rec = json.loads(line)
                item = BenchmarkItem(
                    id=str(rec["id"]),
                    level=Level(rec["level"]),
                    subject=str(rec["subject"]),
                    question=str(rec["question"]),
                    choices=tuple(str(c) for c in rec["choices"]),
                    answer=str(rec["answer"]),
                    gold_doc=rec.get("gold_doc"),
                )
            except (json.JSONDecodeError, KeyError, TypeError, ValueError, ValidationError) as exc:
                raise ValidationError(f"{path}: bad suite item on line {lineno}: {exc}")
            if item.id in seen:
                raise ValidationError(f"{path}: duplicate item id {item.id!r} on line {lineno}")
            seen.add(item.id)
            items.append(item)
    if not items:
        raise ValidationError(f"{path}: suite contains no items")
    return items
