"""Hierarchical navigable small world index over unit vectors.

Layered proximity graph: sparse upper layers are descended greedily, then a
beam of width ef_search runs on the dense bottom layer. Similarity is cosine
via dot product (all vectors are unit norm); ties everywhere break by doc id
ascending so results are reproducible.

Level assignment draws floor(-ln(U) * level_lambda) from a seeded generator,
i.e. a geometric layer distribution with rate 1/ln(m) by default. Degree is
capped at m on layers above 0 and 2m on layer 0. Neighbor selection is
nearest-first; the diversity heuristic can be enabled per index via
``HnswParams.select_heuristic``.

Snapshot layout (little-endian, documented for external readers):

    magic    8s   b"ERIDX001"
    header   <IIIIIq d ? q i  -> dim, count, m, ef_construction, ef_search,
                               seed, level_lambda, select_heuristic,
                               entry_point (-1 if empty), max_level
    ids      per node: <H utf-8 length, then bytes
    levels   per node: <I
    vectors  count * dim float64
    adjacency per node, per layer 0..level: <I degree, then <I neighbor idx
"""

from __future__ import annotations

import heapq
import math
import os
import struct
from dataclasses import dataclass, field

import numpy as np

from ..errors import ValidationError
from .documents import EmbeddedDocument, ScoredHit

MAGIC = b"ERIDX001"
_HEADER = "<IIIIIqd?qi"
MAX_LEVEL_CAP = 32


@dataclass(frozen=True)
class HnswParams:
    m: int = 16
    ef_construction: int = 200
    ef_search: int = 128
    level_lambda: float | None = None  # defaults to 1/ln(m)
    seed: int = 0
    select_heuristic: bool = False

    def __post_init__(self) -> None:
        if self.m < 1:
            raise ValidationError("m must be >= 1")
        if self.ef_construction < self.m:
            raise ValidationError("ef_construction must be >= m")
        if self.ef_search < 1:
            raise ValidationError("ef_search must be >= 1")
        if self.level_lambda is None:
            object.__setattr__(self, "level_lambda", 1.0 / math.log(self.m) if self.m > 1 else 1.0)
        elif self.level_lambda <= 0:
            raise ValidationError("level_lambda must be positive")


@dataclass
class IndexStats:
    searches: int = 0
    inserts: int = 0


class HnswIndex:
    def __init__(self, dim: int, params: HnswParams | None = None) -> None:
        if dim < 1:
            raise ValidationError("dim must be >= 1")
        self.dim = dim
        self.params = params or HnswParams()
        self.stats = IndexStats()
        self._capacity = 256
        self._vectors = np.zeros((self._capacity, dim), dtype=np.float64)
        self._ids: list[str] = []
        self._id_to_idx: dict[str, int] = {}
        self._levels: list[int] = []
        self._adj: list[list[list[int]]] = []  # node -> layer -> neighbor idxs
        self._entry: int | None = None
        self._max_level = -1
        self._rng = np.random.default_rng(self.params.seed)

    def __len__(self) -> int:
        return len(self._ids)

    def __contains__(self, doc_id: str) -> bool:
        return doc_id in self._id_to_idx

    @property
    def entry_point(self) -> str | None:
        return None if self._entry is None else self._ids[self._entry]

    def to_adjacency(self) -> dict[str, list[list[str]]]:
        """Graph as doc ids: node -> per-layer sorted neighbor lists."""
        return {
            self._ids[i]: [sorted(self._ids[j] for j in layer) for layer in layers]
            for i, layers in enumerate(self._adj)
        }

    # -- construction -----------------------------------------------------

    def insert(self, doc: EmbeddedDocument) -> None:
        """Add one document; validations run before any mutation."""
        if doc.vector.shape != (self.dim,):
            raise ValidationError(
                f"vector dim {doc.vector.shape} does not match index dim ({self.dim},)"
            )
        if doc.doc.id in self._id_to_idx:
            raise ValidationError(f"duplicate document id: {doc.doc.id}")

        level = self._draw_level()
        idx = self._append_node(doc, level)
        self.stats.inserts += 1

        if self._entry is None:
            self._entry = idx
            self._max_level = level
            return

        vec = self._vectors[idx]
        entries = [self._entry]
        for layer in range(self._max_level, level, -1):
            nearest = self._search_layer(vec, entries, layer, 1)
            entries = [nearest[0][2]]

        for layer in range(min(level, self._max_level), -1, -1):
            found = self._search_layer(vec, entries, layer, self.params.ef_construction)
            neighbors = self._select_neighbors(vec, found, self.params.m)
            for j in neighbors:
                self._adj[idx][layer].append(j)
                self._adj[j][layer].append(idx)
                bound = self._degree_bound(layer)
                if len(self._adj[j][layer]) > bound:
                    self._shrink(j, layer, bound)
            entries = [i for _, _, i in found]

        if level > self._max_level:
            self._entry = idx
            self._max_level = level

    def _append_node(self, doc: EmbeddedDocument, level: int) -> int:
        idx = len(self._ids)
        if idx >= self._capacity:
            self._capacity = max(self._capacity * 2, idx + 1)
            grown = np.zeros((self._capacity, self.dim), dtype=np.float64)
            grown[:idx] = self._vectors[:idx]
            self._vectors = grown
        self._vectors[idx] = doc.vector
        self._ids.append(doc.doc.id)
        self._id_to_idx[doc.doc.id] = idx
        self._levels.append(level)
        self._adj.append([[] for _ in range(level + 1)])
        return idx

    def _draw_level(self) -> int:
        u = 1.0 - self._rng.random()  # (0, 1], avoids log(0)
        return min(int(-math.log(u) * self.params.level_lambda), MAX_LEVEL_CAP)

    def _degree_bound(self, layer: int) -> int:
        return 2 * self.params.m if layer == 0 else self.params.m

    def _shrink(self, node: int, layer: int, bound: int) -> None:
        """Prune a node's neighbor list to ``bound``, dropping reverse edges too."""
        current = self._adj[node][layer]
        dists = -np.einsum("ij,j->i", self._vectors[current], self._vectors[node])
        ranked = sorted(zip(dists, (self._ids[i] for i in current), current))
        if self.params.select_heuristic:
            keep = set(self._heuristic_select(self._vectors[node], ranked, bound))
        else:
            keep = {i for _, _, i in ranked[:bound]}
        for _, _, dropped in ranked:
            if dropped not in keep:
                self._adj[dropped][layer].remove(node)
        self._adj[node][layer] = [i for _, _, i in ranked if i in keep]

    def _select_neighbors(self, vec: np.ndarray, found: list, m: int) -> list[int]:
        if self.params.select_heuristic:
            return self._heuristic_select(vec, found, m)
        return [i for _, _, i in found[:m]]

    def _heuristic_select(self, vec: np.ndarray, found: list, m: int) -> list[int]:
        # keep a candidate only if it is closer to the query than to anything
        # already kept; backfill with the nearest discarded ones
        kept: list[int] = []
        discarded: list[int] = []
        for dist, _, i in found:
            if len(kept) == m:
                break
            if not kept:
                kept.append(i)
                continue
            to_kept = -np.einsum("ij,j->i", self._vectors[kept], self._vectors[i])
            if dist < float(np.min(to_kept)):
                kept.append(i)
            else:
                discarded.append(i)
        for i in discarded:
            if len(kept) == m:
                break
            kept.append(i)
        return kept

    # -- search ------------------------------------------------------------

    def _distances(self, query: np.ndarray, idxs: list[int]) -> np.ndarray:
        # negated dot product so smaller means closer; einsum keeps the
        # per-row reduction order independent of batch height (BLAS matmul
        # does not), so similarities are bit-identical to the flat-scan oracle
        return -np.einsum("ij,j->i", self._vectors[idxs], query)

    def _search_layer(self, query, entries: list[int], layer: int, ef: int) -> list:
        """Beam search on one layer; returns [(dist, doc_id, idx)] sorted ascending."""
        dists = self._distances(query, entries)
        visited = set(entries)
        candidates = [(d, self._ids[i], i) for d, i in zip(dists, entries)]
        heapq.heapify(candidates)
        best = [(-d, self._ids[i], i) for d, i in zip(dists, entries)]
        heapq.heapify(best)
        while len(best) > ef:
            heapq.heappop(best)

        while candidates:
            dist, _, node = heapq.heappop(candidates)
            if len(best) >= ef and dist > -best[0][0]:
                break
            fresh = [j for j in self._adj[node][layer] if j not in visited]
            if not fresh:
                continue
            visited.update(fresh)
            for j, dj in zip(fresh, self._distances(query, fresh)):
                if len(best) < ef:
                    heapq.heappush(candidates, (dj, self._ids[j], j))
                    heapq.heappush(best, (-dj, self._ids[j], j))
                elif dj < -best[0][0]:
                    heapq.heappush(candidates, (dj, self._ids[j], j))
                    heapq.heappush(best, (-dj, self._ids[j], j))
                    heapq.heappop(best)

        out = [(-negd, doc_id, i) for negd, doc_id, i in best]
        out.sort()
        return out

    def search(self, query: np.ndarray, k: int, ef_search: int | None = None) -> list[ScoredHit]:
        """Top-k by cosine similarity, descending, ties by doc id ascending."""
        if query.shape != (self.dim,):
            raise ValidationError(f"query dim {query.shape} does not match index dim ({self.dim},)")
        if k < 0:
            raise ValidationError("k must be non-negative")
        self.stats.searches += 1
        if self._entry is None or k == 0:
            return []
        ef = max(ef_search if ef_search is not None else self.params.ef_search, k)
        query = np.ascontiguousarray(query, dtype=np.float64)

        entries = [self._entry]
        for layer in range(self._max_level, 0, -1):
            nearest = self._search_layer(query, entries, layer, 1)
            entries = [nearest[0][2]]
        found = self._search_layer(query, entries, 0, ef)
        return [ScoredHit(doc_id=doc_id, similarity=-dist) for dist, doc_id, _ in found[:k]]

    # -- invariants ---------------------------------------------------------

    def audit(self) -> None:
        """Raise ValidationError if any structural invariant is broken."""
        n = len(self._ids)
        if n == 0:
            if self._entry is not None:
                raise ValidationError("audit: empty index must have no entry point")
            return
        if self._entry is None:
            raise ValidationError("audit: non-empty index must have an entry point")
        if self._levels[self._entry] != self._max_level:
            raise ValidationError("audit: entry point must sit on the top layer")

        for i in range(n):
            if len(self._adj[i]) != self._levels[i] + 1:
                raise ValidationError(f"audit: node {self._ids[i]} missing layers (nesting broken)")
            for layer, neigh in enumerate(self._adj[i]):
                if len(neigh) != len(set(neigh)):
                    raise ValidationError(f"audit: duplicate edges at node {self._ids[i]} layer {layer}")
                if i in neigh:
                    raise ValidationError(f"audit: self edge at node {self._ids[i]} layer {layer}")
                if len(neigh) > self._degree_bound(layer):
                    raise ValidationError(
                        f"audit: degree {len(neigh)} exceeds bound at node {self._ids[i]} layer {layer}"
                    )
                for j in neigh:
                    if self._levels[j] < layer:
                        raise ValidationError("audit: edge to a node absent from this layer")
                    if i not in self._adj[j][layer]:
                        raise ValidationError(
                            f"audit: edge {self._ids[i]}->{self._ids[j]} at layer {layer} not bidirectional"
                        )

        seen = {self._entry}
        frontier = [self._entry]
        while frontier:
            node = frontier.pop()
            for j in self._adj[node][0]:
                if j not in seen:
                    seen.add(j)
                    frontier.append(j)
        if len(seen) != n:
            raise ValidationError(f"audit: only {len(seen)}/{n} nodes reachable on layer 0")

    # -- persistence ---------------------------------------------------------

    def save(self, path: str | os.PathLike) -> None:
        with open(path, "wb") as fh:
            fh.write(MAGIC)
            fh.write(
                struct.pack(
                    _HEADER,
                    self.dim,
                    len(self._ids),
                    self.params.m,
                    self.params.ef_construction,
                    self.params.ef_search,
                    self.params.seed,
                    self.params.level_lambda,
                    self.params.select_heuristic,
                    -1 if self._entry is None else self._entry,
                    self._max_level,
                )
            )
            for doc_id in self._ids:
                raw = doc_id.encode("utf-8")
                fh.write(struct.pack("<H", len(raw)))
                fh.write(raw)
            for level in self._levels:
                fh.write(struct.pack("<I", level))
            fh.write(np.ascontiguousarray(self._vectors[: len(self._ids)]).astype("<f8").tobytes())
            for layers in self._adj:
                for neigh in layers:
                    fh.write(struct.pack("<I", len(neigh)))
                    fh.write(struct.pack(f"<{len(neigh)}I", *neigh))


def load_snapshot(path: str | os.PathLike) -> HnswIndex:
    with open(path, "rb") as fh:
        magic = fh.read(len(MAGIC))
        if magic != MAGIC:
            raise ValidationError(f"{path}: not an index snapshot (bad magic bytes)")
        header = fh.read(struct.calcsize(_HEADER))
        dim, count, m, efc, efs, seed, lam, heuristic, entry, max_level = struct.unpack(_HEADER, header)
        params = HnswParams(
            m=m, ef_construction=efc, ef_search=efs, level_lambda=lam, seed=seed,
            select_heuristic=heuristic,
        )
        index = HnswIndex(dim=dim, params=params)
        for _ in range(count):
            (id_len,) = struct.unpack("<H", fh.read(2))
            index._ids.append(fh.read(id_len).decode("utf-8"))
        index._id_to_idx = {doc_id: i for i, doc_id in enumerate(index._ids)}
        for _ in range(count):
            (level,) = struct.unpack("<I", fh.read(4))
            index._levels.append(level)
        raw = fh.read(count * dim * 8)
        index._capacity = max(count, 1)
        index._vectors = np.frombuffer(raw, dtype="<f8").reshape(count, dim).copy()
        for i in range(count):
            layers = []
            for _ in range(index._levels[i] + 1):
                (degree,) = struct.unpack("<I", fh.read(4))
                layers.append(list(struct.unpack(f"<{degree}I", fh.read(4 * degree))))
            index._adj.append(layers)
        index._entry = None if entry == -1 else entry
        index._max_level = max_level
    return index


def build_index(docs: list[EmbeddedDocument], params: HnswParams | None = None, dim: int | None = None) -> HnswIndex:
    """Build by repeated insertion (so build == incremental insert, by definition)."""
    if not docs and dim is None:
        raise ValidationError("empty corpus requires an explicit dim")
    index = HnswIndex(dim=dim if dim is not None else docs[0].vector.shape[0], params=params)
    for doc in docs:
        index.insert(doc)
    return index
