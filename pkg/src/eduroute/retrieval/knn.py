"""Exact k-nearest-neighbor oracle used to test the approximate index.

Deliberately independent of hnsw.py: a flat scan over all vectors with the
same similarity, sort, and tie rules that search() promises.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from ..errors import ValidationError
from .documents import EmbeddedDocument, ScoredHit


def brute_force_knn(docs: Sequence[EmbeddedDocument], query: np.ndarray, k: int) -> list[ScoredHit]:
    """Exact top-k by cosine, descending, ties by doc id ascending."""
    if k < 0:
        raise ValidationError("k must be non-negative")
    if k == 0 or not docs:
        return []
    matrix = np.stack([d.vector for d in docs])
    if matrix.shape[1] != query.shape[0]:
        raise ValidationError("query dim does not match corpus dim")
    # einsum: per-row reduction order is independent of matrix height, so
    # these similarities match the approximate index bit for bit
    sims = np.einsum("ij,j->i", matrix, np.ascontiguousarray(query, dtype=np.float64))
    order = sorted(range(len(docs)), key=lambda i: (-sims[i], docs[i].doc.id))
    return [ScoredHit(doc_id=docs[i].doc.id, similarity=float(sims[i])) for i in order[:k]]
