import logging
import math

import numpy as np
import pytest

from oracles import brute_partition_objective
from topiccloud.extract import (
    ClusterResult,
    DocumentTokens,
    ExtractError,
    clusters_to_topicset,
    extract_topics,
    load_embeddings,
    spherical_kmeans,
    tokenize,
)
from topiccloud.topicset import ParseError


class TestEmbeddings:
    def test_minimal(self):
        t = load_embeddings(b"2 3\na 1 0 0\nb 0 2 0\n")
        assert t.dim == 3 and len(t) == 2
        assert np.allclose(t.vectors["b"], [0, 1, 0])

    def test_short_line(self):
        with pytest.raises(ParseError) as info:
            load_embeddings("2 3\na 1 0 0\nb 1 2\n")
        assert info.value.line == 3

    def test_normalized(self):
        t = load_embeddings("1 3\nx 3 4 0\n")
        assert np.allclose(t.vectors["x"], [0.6, 0.8, 0.0], atol=1e-15)

    def test_zero_vector(self):
        with pytest.raises(ParseError, match="zero"):
            load_embeddings("1 2\nx 0 0\n")

    def test_duplicate_last_wins(self, caplog):
        with caplog.at_level(logging.WARNING):
            t = load_embeddings("2 2\nx 1 0\nx 0 1\n")
        assert np.allclose(t.vectors["x"], [0, 1])
        assert "duplicate" in caplog.text

    def test_bad_header(self):
        with pytest.raises(ParseError):
            load_embeddings("two three\n")

    def test_norms(self):
        rng = np.random.default_rng(0)
        lines = ["30 7"] + [f"w{i} " + " ".join(f"{v:.5f}" for v in rng.normal(size=7)) for i in range(30)]
        t = load_embeddings("\n".join(lines))
        for v in t.vectors.values():
            assert abs(np.linalg.norm(v) - 1) < 1e-6


class TestTokenize:
    def test_hand_example(self):
        doc = tokenize("The drug, the Drug!", {"the"})
        assert doc.counts == {"drug": 2} and doc.total == 2

    def test_all_stopwords(self):
        with pytest.raises(ExtractError, match="no content tokens"):
            tokenize("the The THE", {"the"})

    def test_total(self):
        doc = tokenize("a b b c3 c-c d_e", set())
        assert doc.total == sum(doc.counts.values())
        assert doc.counts == {"a": 1, "b": 2, "c": 3, "d": 1, "e": 1}


def bundles(jitter_seed=0):
    rng = np.random.default_rng(jitter_seed)
    angles = list(rng.uniform(0, 5, 5)) + list(rng.uniform(85, 90, 5))
    X = np.array([[math.cos(math.radians(a)), math.sin(math.radians(a))] for a in angles])
    w = rng.integers(1, 6, 10).astype(float)
    return X, w


def triples(X, w):
    return [(f"p{i}", X[i], w[i]) for i in range(len(X))]


class TestSphericalKMeans:
    def test_k_equals_n(self):
        X, w = bundles()
        cr = spherical_kmeans(triples(X, w), 10, seed=1)
        assert len(set(cr.assignments.values())) == 10
        assert cr.objective == pytest.approx(0, abs=1e-12)

    @pytest.mark.parametrize("seed", range(5))
    def test_bundles_match_brute_force(self, seed):
        X, w = bundles(seed)
        cr = spherical_kmeans(triples(X, w), 2, seed=seed)
        labels = np.array([cr.assignments[f"p{i}"] for i in range(10)])
        assert len(set(labels[:5])) == 1 and len(set(labels[5:])) == 1 and labels[0] != labels[5]
        best, best_labels = brute_partition_objective(X, w)
        assert abs(cr.objective - best) < 1e-9
        assert (best_labels == labels).all() or (best_labels == 1 - labels).all()

    @pytest.mark.parametrize("seed", range(20))
    def test_objective_non_increasing(self, seed):
        rng = np.random.default_rng(100 + seed)
        n, d, K = int(rng.integers(10, 60)), int(rng.integers(2, 9)), int(rng.integers(2, 7))
        X = rng.normal(size=(n, d))
        X /= np.linalg.norm(X, axis=1, keepdims=True)
        w = rng.integers(1, 9, n).astype(float)
        cr = spherical_kmeans(triples(X, w), K, seed=seed, tol=0, max_iter=200)
        diffs = np.diff(cr.trace)
        assert (diffs <= 1e-12).all(), cr.trace
        assert np.allclose(np.linalg.norm(cr.centroids, axis=1), 1)
        assert set(cr.assignments) == {f"p{i}" for i in range(n)}
        assert all(0 <= k < K for k in cr.assignments.values())

    def test_recomputed_objective(self):
        X, w = bundles(3)
        cr = spherical_kmeans(triples(X, w), 3, seed=4)
        labels = np.array([cr.assignments[f"p{i}"] for i in range(10)])
        manual = sum(w[i] * (1 - X[i] @ cr.centroids[labels[i]]) for i in range(10))
        assert cr.objective == pytest.approx(manual, abs=1e-12)

    def test_deterministic(self):
        rng = np.random.default_rng(1)
        X = rng.normal(size=(40, 5))
        X /= np.linalg.norm(X, axis=1, keepdims=True)
        t = triples(X, np.ones(40))
        a = spherical_kmeans(t, 4, seed=11)
        b = spherical_kmeans(t, 4, seed=11)
        assert a.assignments == b.assignments and np.array_equal(a.centroids, b.centroids)
        r = spherical_kmeans(t, 4, seed=11, init="random")
        assert len(set(r.assignments.values())) == 4

    def test_too_many_clusters(self):
        X, w = bundles()
        with pytest.raises(ExtractError):
            spherical_kmeans(triples(X, w), 11)

    def test_empty_cluster_reseeded(self):
        # duplicate directions make an initial centroid collide; every cluster still ends non-empty
        X = np.array([[1.0, 0.0]] * 3 + [[0.0, 1.0]] * 3 + [[-1.0, 0.0]])
        cr = spherical_kmeans(triples(X, np.ones(7)), 3, seed=0, init="random")
        assert len(set(cr.assignments.values())) == 3


class TestClustersToTopics:
    def test_hand_fixture(self):
        cr = ClusterResult(["a", "b"], {"a": 0, "b": 1}, np.eye(2), 0.0, [0.0], 1)
        ts = clusters_to_topicset(cr, DocumentTokens({"a": 6, "b": 4}, 10))
        assert [t.proportion for t in ts.topics] == [0.6, 0.4]
        assert [(w.surface, w.weight) for w in ts.topics[0].words] == [("a", 6.0)]

    def test_single_cluster(self):
        cr = ClusterResult(["a", "b"], {"a": 0, "b": 0}, np.eye(2)[:1], 0.0, [0.0], 1)
        ts = clusters_to_topicset(cr, DocumentTokens({"a": 1, "b": 3}, 4))
        assert [t.proportion for t in ts.topics] == [1.0]
        assert [w.surface for w in ts.topics[0].words] == ["b", "a"]

    def test_orders_by_proportion(self):
        cr = ClusterResult(["a", "b", "c"], {"a": 0, "b": 1, "c": 1}, np.eye(3)[:2], 0.0, [0.0], 1)
        ts = clusters_to_topicset(cr, DocumentTokens({"a": 2, "b": 3, "c": 1}, 6))
        assert [t.proportion for t in ts.topics] == pytest.approx([4 / 6, 2 / 6])

    @pytest.mark.parametrize("seed", range(10))
    def test_proportions_sum_to_one(self, seed):
        rng = np.random.default_rng(seed)
        n = 25
        X = rng.normal(size=(n, 4))
        X /= np.linalg.norm(X, axis=1, keepdims=True)
        counts = {f"p{i}": int(c) for i, c in enumerate(rng.integers(1, 20, n))}
        cr = spherical_kmeans([(f"p{i}", X[i], counts[f"p{i}"]) for i in range(n)], 5, seed=seed)
        ts = clusters_to_topicset(cr, DocumentTokens(counts, sum(counts.values())))
        assert abs(sum(t.proportion for t in ts.topics) - 1) <= 1e-12


def test_missing_words_dropped(caplog):
    from topiccloud.extract import EmbeddingTable

    table = EmbeddingTable(2, {"a": np.array([1.0, 0.0]), "b": np.array([0.0, 1.0])})
    doc = tokenize("a a b zzz", set())
    with caplog.at_level(logging.WARNING):
        ts, cr, missing = extract_topics(doc, table, K=2, seed=0)
    assert missing == ["zzz"]
    assert [t.proportion for t in ts.topics] == pytest.approx([2 / 3, 1 / 3])
