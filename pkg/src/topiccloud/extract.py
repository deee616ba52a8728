"""Topic extraction from a raw document with spherical k-means over word embeddings."""

from __future__ import annotations

import logging
import re
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Optional, Union

import numpy as np

from .rng import Stream
from .topicset import ParseError, Topic, TopicSet, WordEntry

log = logging.getLogger(__name__)


class ExtractError(ValueError):
    pass


@dataclass
class EmbeddingTable:
    dim: int
    vectors: dict  # word -> unit-norm np.ndarray

    def __contains__(self, word):
        return word in self.vectors

    def __len__(self):
        return len(self.vectors)


def load_embeddings(data: Union[bytes, str]) -> EmbeddingTable:
    """Read the word2vec text format: a ``count dim`` header, then ``word v1 ... vdim``."""
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    lines = data.splitlines()
    if not lines:
        raise ParseError("empty embedding file", 1, 1)
    header = lines[0].split()
    if len(header) != 2 or not all(h.isdigit() for h in header):
        raise ParseError("expected header 'count dim'", 1, 1)
    count, dim = int(header[0]), int(header[1])
    if dim <= 0:
        raise ParseError("dimension must be positive", 1, 1)

    vectors = {}
    for lineno, line in enumerate(lines[1:], 2):
        parts = line.split()
        if not parts:
            continue
        word, values = parts[0], parts[1:]
        if len(values) != dim:
            raise ParseError(f"word {word!r} has {len(values)} values, expected {dim}", lineno, 1)
        try:
            vec = np.array([float(v) for v in values])
        except ValueError:
            raise ParseError(f"non-numeric value for {word!r}", lineno, 1) from None
        norm = np.linalg.norm(vec)
        if not np.isfinite(norm) or norm == 0:
            raise ParseError(f"word {word!r} has a zero or non-finite vector", lineno, 1)
        if word in vectors:
            log.warning("duplicate embedding for %r at line %d; keeping the later one", word, lineno)
        vectors[word] = vec / norm
    if len(vectors) != count:
        log.warning("embedding header announces %d words, found %d", count, len(vectors))
    return EmbeddingTable(dim, vectors)


@dataclass
class DocumentTokens:
    counts: dict  # word -> term frequency, first-occurrence order
    total: int


_WORD = re.compile(r"[^\W\d_]+")


def tokenize(text: str, stopwords: Iterable[str] = ()) -> DocumentTokens:
    stop = {s.lower() for s in stopwords}
    counts = Counter(t for t in _WORD.findall(text.lower()) if t not in stop)
    if not counts:
        raise ExtractError("no content tokens")
    return DocumentTokens(dict(counts), sum(counts.values()))


def parse_stopwords(text: str) -> set[str]:
    return {line.strip().lower() for line in text.splitlines() if line.strip() and not line.startswith("#")}


@dataclass
class ClusterResult:
    words: list  # clustered words, input order
    assignments: dict  # word -> cluster id
    centroids: np.ndarray  # (K, dim), unit rows
    objective: float
    trace: list  # objective after every iteration
    iterations: int


def _objective(X, w, C, labels):
    sims = np.einsum("ij,ij->i", X, C[labels])
    return float(np.dot(w, 1.0 - sims))


def _seed_plusplus(X, w, K, rng: Stream):
    n = len(X)
    chosen = [rng.below(n)]
    dist = 1.0 - X @ X[chosen[0]]
    for _ in range(1, K):
        score = w * np.maximum(dist, 0.0) ** 2
        score[chosen] = 0.0
        total = score.sum()
        if total <= 0:
            free = [i for i in range(n) if i not in chosen]
            nxt = free[rng.below(len(free))]
        else:
            target = rng.uniform() * total
            nxt = int(np.searchsorted(np.cumsum(score), target, side="right"))
            nxt = min(nxt, n - 1)
            while score[nxt] == 0:  # landed on a zero-width step at the end
                nxt -= 1
        chosen.append(nxt)
        dist = np.minimum(dist, 1.0 - X @ X[nxt])
    return X[chosen].copy()


def _seed_random(X, K, rng: Stream):
    idx = list(range(len(X)))
    picked = []
    for _ in range(K):
        picked.append(idx.pop(rng.below(len(idx))))
    return X[picked].copy()


def _update_centroids(X, w, labels, C_old):
    C = np.zeros_like(C_old)
    np.add.at(C, labels, X * w[:, None])  # fixed (input) summation order
    norms = np.linalg.norm(C, axis=1)
    dead = norms == 0
    C[~dead] /= norms[~dead, None]
    C[dead] = C_old[dead]
    return C


def spherical_kmeans(
    words: list,
    K: int,
    seed: int = 0,
    max_iter: int = 100,
    tol: float = 1e-10,
    init: str = "kmeans++",
) -> ClusterResult:
    """Cluster ``(word, unit vector, weight)`` triples by cosine similarity.

    The objective is the weighted sum of cosine distances to the assigned
    centroid. Ties in assignment go to the lowest cluster id; a cluster that
    empties out is reseeded with the point farthest from its own centroid.
    """
    names = [t[0] for t in words]
    if len(set(names)) != len(names):
        raise ExtractError("duplicate words passed to spherical_kmeans")
    if K < 1 or K > len(names):
        raise ExtractError(f"K={K} needs between 1 and {len(names)} distinct words")
    X = np.array([np.asarray(t[1], dtype=np.float64) for t in words])
    w = np.array([float(t[2]) for t in words])
    if np.any(w <= 0):
        raise ExtractError("weights must be positive")
    rng = Stream(seed)
    if init == "kmeans++":
        C = _seed_plusplus(X, w, K, rng)
    elif init == "random":
        C = _seed_random(X, K, rng)
    else:
        raise ValueError(f"unknown init {init!r}")

    trace = []
    labels = None
    it = 0
    for it in range(1, max_iter + 1):
        new = np.argmax(X @ C.T, axis=1)  # first maximum wins ties
        _reseed_empty(X, C, new)
        C = _update_centroids(X, w, new, C)
        obj = _objective(X, w, C, new)
        stalled = labels is not None and np.array_equal(new, labels)
        improvement = trace[-1] - obj if trace else np.inf
        trace.append(obj)
        labels = new
        if stalled or improvement < tol:
            break
    return ClusterResult(
        names,
        {n: int(k) for n, k in zip(names, labels)},
        C,
        trace[-1],
        trace,
        it,
    )


def _reseed_empty(X, C, labels):
    K = len(C)
    for k in range(K):
        if np.any(labels == k):
            continue
        sims = np.einsum("ij,ij->i", X, C[labels])
        sizes = np.bincount(labels, minlength=K)
        movable = sizes[labels] > 1
        sims = np.where(movable, sims, np.inf)
        far = int(np.argmin(sims))
        labels[far] = k
        C[k] = X[far]


def clusters_to_topicset(cr: ClusterResult, doc: DocumentTokens, label: Optional[str] = None) -> TopicSet:
    """One topic per non-empty cluster; proportion = share of clustered tokens."""
    K = len(cr.centroids)
    members = [[] for _ in range(K)]
    for word in cr.words:
        members[cr.assignments[word]].append(word)
    total = sum(doc.counts[w] for w in cr.words)
    topics = []
    for k in range(K):
        if not members[k]:
            continue
        mass = sum(doc.counts[w] for w in members[k])
        ranked = sorted(members[k], key=lambda w: -doc.counts[w])
        words = tuple(WordEntry(w, float(doc.counts[w])) for w in ranked)
        topics.append((mass / total, k, words))
    topics.sort(key=lambda t: (-t[0], t[1]))
    return TopicSet(tuple(Topic(p, ws) for p, _, ws in topics), label)


def extract_topics(
    doc: DocumentTokens,
    table: EmbeddingTable,
    K: int = 10,
    seed: int = 0,
    max_iter: int = 100,
    tol: float = 1e-10,
    init: str = "kmeans++",
    label: Optional[str] = None,
):
    """Cluster the document's embedded words and return ``(TopicSet, ClusterResult, missing)``."""
    triples = [(wd, table.vectors[wd], n) for wd, n in doc.counts.items() if wd in table]
    missing = [wd for wd in doc.counts if wd not in table]
    if missing:
        log.warning("%d document words have no embedding and were dropped", len(missing))
    if not triples:
        raise ExtractError("no document word has an embedding")
    cr = spherical_kmeans(triples, K, seed, max_iter, tol, init)
    return clusters_to_topicset(cr, doc, label), cr, missing


def load_document(path: Union[str, Path], stopwords_path: Optional[Union[str, Path]] = None) -> DocumentTokens:
    stop = parse_stopwords(Path(stopwords_path).read_text("utf-8")) if stopwords_path else set()
    return tokenize(Path(path).read_text("utf-8"), stop)
