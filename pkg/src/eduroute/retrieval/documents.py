"""Corpus entries and their embedded form.

Corpus JSONL wire format, one UTF-8 object per line:

    {"id": "...", "title": "...", "text": "..."}
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass

import numpy as np

from ..errors import ValidationError


@dataclass(frozen=True)
class Document:
    id: str
    title: str
    text: str

    def __post_init__(self) -> None:
        if not self.id:
            raise ValidationError("document id must be non-empty")
        if not self.text.strip():
            raise ValidationError(f"document {self.id}: text must be non-empty")


@dataclass(frozen=True)
class EmbeddedDocument:
    doc: Document
    vector: np.ndarray

    def __post_init__(self) -> None:
        vec = np.ascontiguousarray(self.vector, dtype=np.float64)
        object.__setattr__(self, "vector", vec)
        norm = float(np.linalg.norm(vec))
        if abs(norm - 1.0) >= 1e-6:
            raise ValidationError(f"document {self.doc.id}: vector must be unit norm, got {norm}")


@dataclass(frozen=True)
class ScoredHit:
    doc_id: str
    similarity: float


def load_corpus(path: str | os.PathLike) -> list[Document]:
    docs: list[Document] = []
    seen: set[str] = set()
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                rec = json.loads(line)
                doc = Document(id=str(rec["id"]), title=str(rec.get("title", "")), text=str(rec["text"]))
            except (json.JSONDecodeError, KeyError, ValidationError) as exc:
                raise ValidationError(f"{path}: bad corpus record on line {lineno}: {exc}")
            if doc.id in seen:
                raise ValidationError(f"{path}: duplicate document id {doc.id!r} on line {lineno}")
            seen.add(doc.id)
            docs.append(doc)
    if not docs:
        raise ValidationError(f"{path}: corpus is empty")
    return docs
