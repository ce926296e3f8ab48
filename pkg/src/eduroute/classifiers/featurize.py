"""Deterministic character n-gram feature hashing.

Texts are mapped to sparse L2-normalized count vectors over hashed character
2-grams and 3-grams. The hash is CRC-32, which is stable across processes and
platforms (Python's builtin ``hash`` is salted and must not be used here).
"""

from __future__ import annotations

import zlib
from dataclasses import dataclass

import numpy as np

from ..errors import ValidationError

NGRAM_SIZES = (2, 3)


@dataclass(frozen=True)
class FeatureVector:
    """Sparse unit vector: strictly increasing indices with parallel values."""

    indices: np.ndarray
    values: np.ndarray
    dim: int

    def __post_init__(self) -> None:
        if len(self.indices) != len(self.values):
            raise ValidationError("indices and values must have equal length")
        if len(self.indices) > 1 and not np.all(np.diff(self.indices) > 0):
            raise ValidationError("indices must be strictly increasing")
        norm = float(np.linalg.norm(self.values))
        if norm > 1.0 + 1e-9:
            raise ValidationError("feature vector norm exceeds 1")

    def dot(self, weights: np.ndarray) -> float:
        return float(np.dot(weights[self.indices], self.values))


def char_ngrams(text: str, sizes: tuple[int, ...] = NGRAM_SIZES) -> list[str]:
    """Character n-grams of the given sizes, in reading order.

    Texts shorter than the smallest size yield the whole text as one gram so
    that every non-empty input remains featurizable.
    """
    grams = [text[i : i + n] for n in sizes for i in range(len(text) - n + 1)]
    return grams if grams else [text]


def hash_gram(gram: str) -> int:
    return zlib.crc32(gram.encode("utf-8"))


def featurize(text: str, dim: int) -> FeatureVector:
    """Hash character 2/3-grams of ``text`` into ``dim`` buckets, L2-normalized.

    Deterministic: the same text and dim always produce an identical vector.
    """
    if dim < 2:
        raise ValidationError("dim must be >= 2")
    stripped = text.strip()
    if not stripped:
        raise ValidationError("text must be non-empty")

    counts: dict[int, float] = {}
    for gram in char_ngrams(stripped):
        idx = hash_gram(gram) % dim
        counts[idx] = counts.get(idx, 0.0) + 1.0

    indices = np.array(sorted(counts), dtype=np.int64)
    values = np.array([counts[i] for i in indices], dtype=np.float64)
    values /= np.linalg.norm(values)
    return FeatureVector(indices=indices, values=values, dim=dim)
