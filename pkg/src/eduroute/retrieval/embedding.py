"""Text embedding behind one small interface: ``dim`` plus ``embed(text)``.

The baseline embedder hashes character 2/3-grams straight into a dense
low-dimensional vector with a CRC-derived sign, then L2-normalizes. It is
fully deterministic, needs no model download, and preserves the lexical
similarity ordering the rest of the cascade relies on. A remote embedder
swaps in a real model over HTTP.
"""

from __future__ import annotations

import numpy as np

import httpx

from ..classifiers.featurize import char_ngrams, hash_gram
from ..errors import RetrievalUnavailableError, ValidationError
from .documents import Document, EmbeddedDocument

_SIGN_BIT = 0x80000000


class HashedNgramEmbedder:
    """Deterministic dense embedder: signed n-gram hashing into ``dim`` buckets."""

    def __init__(self, dim: int = 64) -> None:
        if dim < 2:
            raise ValidationError("embed dim must be >= 2")
        self.dim = dim

    def embed(self, text: str) -> np.ndarray:
        stripped = text.strip()
        if not stripped:
            raise ValidationError("text must be non-empty")
        vec = np.zeros(self.dim, dtype=np.float64)
        signed = True
        for _ in range(2):
            for gram in char_ngrams(stripped):
                h = hash_gram(gram)
                sign = -1.0 if (signed and h & _SIGN_BIT) else 1.0
                vec[h % self.dim] += sign
            norm = float(np.linalg.norm(vec))
            if norm > 1e-12:
                return vec / norm
            # total sign cancellation; retry unsigned (counts cannot cancel)
            vec[:] = 0.0
            signed = False
        raise ValidationError("text produced an empty embedding")


class RemoteEmbedder:
    """Calls POST {"texts": [...]} -> {"vectors": [[...]]} and normalizes."""

    def __init__(self, endpoint: str, dim: int, timeout: float = 30.0) -> None:
        if not endpoint:
            raise ValidationError("embedding endpoint must be non-empty")
        self.endpoint = endpoint
        self.dim = dim
        self.timeout = timeout

    def embed(self, text: str) -> np.ndarray:
        return self.embed_many([text])[0]

    def embed_many(self, texts: list[str]) -> list[np.ndarray]:
        if any(not t.strip() for t in texts):
            raise ValidationError("texts must be non-empty")
        try:
            resp = httpx.post(self.endpoint, json={"texts": texts}, timeout=self.timeout)
            resp.raise_for_status()
            vectors = resp.json()["vectors"]
        except (httpx.HTTPError, KeyError, TypeError) as exc:
            raise RetrievalUnavailableError(f"embedding endpoint failed: {exc}")
        out = []
        for vec in vectors:
            arr = np.asarray(vec, dtype=np.float64)
            if arr.shape != (self.dim,):
                raise RetrievalUnavailableError(
                    f"embedding endpoint returned dim {arr.shape}, expected ({self.dim},)"
                )
            norm = float(np.linalg.norm(arr))
            if norm <= 0:
                raise RetrievalUnavailableError("embedding endpoint returned a zero vector")
            out.append(arr / norm)
        return out


def embed_documents(docs: list[Document], embedder) -> list[EmbeddedDocument]:
    return [EmbeddedDocument(doc=d, vector=embedder.embed(d.title + "\n" + d.text)) for d in docs]
