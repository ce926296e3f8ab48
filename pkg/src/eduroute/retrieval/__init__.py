"""Retrieval core: embeddings, HNSW index, exact-kNN oracle, reranker."""

from .documents import Document, EmbeddedDocument, ScoredHit, load_corpus
from .embedding import HashedNgramEmbedder, RemoteEmbedder, embed_documents
from .hnsw import HnswIndex, HnswParams, build_index, load_snapshot
from .knn import brute_force_knn
from .rerank import OverlapReranker, RemoteReranker, RerankedHit, ngram_f1, rerank

__all__ = [
    "Document",
    "EmbeddedDocument",
    "HashedNgramEmbedder",
    "HnswIndex",
    "HnswParams",
    "OverlapReranker",
    "RemoteEmbedder",
    "RemoteReranker",
    "RerankedHit",
    "ScoredHit",
    "brute_force_knn",
    "build_index",
    "embed_documents",
    "load_corpus",
    "load_snapshot",
    "ngram_f1",
    "rerank",
]
