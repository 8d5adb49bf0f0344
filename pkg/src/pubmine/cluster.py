"""Deterministic Lloyd k-means over TF-IDF rows, with top-word labels.

Contract, in order of precedence:

* k-means++ initialization from a seeded generator; identical (matrix, k,
  seed) always produces identical output, regardless of BLAS thread count
  (all reductions run through scipy's single-threaded sparse kernels).
* Assignment ties break toward the lowest cluster index.
* An empty cluster is repaired by stealing the document farthest from the
  empty centroid (lowest row index on ties), picked from clusters that keep
  at least one other member.  The stolen document becomes the sole member,
  which keeps the objective non-increasing across iterations.
* Termination: assignments unchanged, relative WCSS improvement < 1e-6, or
  100 iterations.
"""

from __future__ import annotations

import datetime
from dataclasses import dataclass

import numpy as np
from scipy import sparse

from .errors import ClusterOutOfRange, DegenerateMatrix, KTooLarge, KTooSmall
from .medline import Corpus
from .pipeline import TermDocMatrix, Vocabulary

MAX_ITERATIONS = 100
REL_TOL = 1e-6
LABEL_WORDS = 6


@dataclass(frozen=True, eq=False)
class ClusterModel:
    k: int
    assignments: np.ndarray        # (n,) row -> cluster index in [0, k)
    centroids: np.ndarray          # (k, n_terms)
    sizes: np.ndarray              # (k,)
    labels: tuple[tuple[str, ...], ...]
    wcss: float
    seed: int
    iterations_run: int
    doc_ids: tuple[int, ...]
    wcss_history: tuple[float, ...]  # post-update objective per iteration


def _sq_dists(X: sparse.csr_matrix, row_sq: np.ndarray, centroids: np.ndarray,
              cent_sq: np.ndarray) -> np.ndarray:
    """Squared Euclidean distance of every row to every centroid, (n, k)."""
    return np.maximum(row_sq[:, None] - 2.0 * (X @ centroids.T) + cent_sq[None, :], 0.0)


def _plus_plus_init(X: sparse.csr_matrix, row_sq: np.ndarray, k: int,
                    rng: np.random.Generator) -> np.ndarray:
    n = X.shape[0]
    centroids = np.zeros((k, X.shape[1]))
    first = int(rng.integers(n))
    centroids[0] = X[first].toarray().ravel()
    # einsum keeps every reduction off BLAS, so thread count cannot change bits
    sq = np.einsum("ij,ij->i", centroids[:1], centroids[:1])
    d2 = _sq_dists(X, row_sq, centroids[:1], sq).ravel()
    for i in range(1, k):
        total = d2.sum()
        if total > 0.0:
            idx = int(rng.choice(n, p=d2 / total))
        else:
            # every point coincides with a chosen centroid
            idx = int(rng.integers(n))
        centroids[i] = X[idx].toarray().ravel()
        sq = np.einsum("ij,ij->i", centroids[i:i + 1], centroids[i:i + 1])
        d2 = np.minimum(d2, _sq_dists(X, row_sq, centroids[i:i + 1], sq).ravel())
    return centroids


def _top_terms(centroid: np.ndarray, vocab: Vocabulary, limit: int = LABEL_WORDS) -> tuple[str, ...]:
    positive = np.flatnonzero(centroid > 0.0)
    ranked = sorted(positive, key=lambda j: (-centroid[j], vocab.terms[j]))
    return tuple(vocab.terms[j] for j in ranked[:limit])


def label_clusters(model: ClusterModel, matrix: TermDocMatrix) -> tuple[tuple[str, ...], ...]:
    """Up to six highest-weight centroid terms per cluster, ties lexicographic."""
    return tuple(_top_terms(c, matrix.vocabulary) for c in model.centroids)


def kmeans(matrix: TermDocMatrix, k: int, seed: int = 42,
           init_centroids: np.ndarray | None = None) -> ClusterModel:
    """Cluster the rows of ``matrix`` into exactly ``k`` groups.

    ``init_centroids`` replaces the k-means++ seeding when given (used by
    tests that need permutation-stable starts); the Lloyd loop is unchanged.
    """
    n = matrix.n_docs
    if k < 1:
        raise KTooSmall(f"k={k} is below 1")
    if k > n:
        # the engine only needs one point per cluster; the user-facing
        # k <= n-1 slider bound is enforced by the session layer
        raise KTooLarge(f"k={k} exceeds document count ({n})")
    if n < 2:
        raise DegenerateMatrix("clustering needs at least 2 rows")
    if len(matrix.zero_rows) == n:
        raise DegenerateMatrix("all rows are zero vectors")

    X = matrix.matrix
    row_sq = np.asarray(X.multiply(X).sum(axis=1)).ravel()
    rng = np.random.default_rng(seed)

    if init_centroids is not None:
        centroids = np.array(init_centroids, dtype=float)
        if centroids.shape != (k, matrix.n_terms):
            raise ValueError(f"init_centroids must have shape ({k}, {matrix.n_terms})")
    else:
        centroids = _plus_plus_init(X, row_sq, k, rng)

    assignments = np.zeros(n, dtype=np.intp)
    sizes = np.zeros(k, dtype=np.intp)
    prev_assignments: np.ndarray | None = None
    prev_wcss: float | None = None
    history: list[float] = []
    iterations = 0

    cent_sq = np.einsum("ij,ij->i", centroids, centroids)
    for iterations in range(1, MAX_ITERATIONS + 1):
        d2 = _sq_dists(X, row_sq, centroids, cent_sq)
        assignments = np.argmin(d2, axis=1)  # ties -> lowest cluster index
        sizes = np.bincount(assignments, minlength=k)

        for c in np.flatnonzero(sizes == 0):
            dist = d2[:, c].copy()
            dist[sizes[assignments] < 2] = -np.inf  # never empty another cluster
            j = int(np.argmax(dist))  # farthest point, lowest row index on ties
            sizes[assignments[j]] -= 1
            sizes[c] += 1
            assignments[j] = c

        indicator = sparse.csr_matrix(
            (np.ones(n), (assignments, np.arange(n))), shape=(k, n))
        centroids = np.asarray((indicator @ X).todense()) / sizes[:, None]
        cent_sq = np.einsum("ij,ij->i", centroids, centroids)

        # for mean centroids, WCSS = sum ||x||^2 - sum size_c * ||mu_c||^2
        wcss = max(float(row_sq.sum() - (sizes * cent_sq).sum()), 0.0)
        history.append(wcss)

        if prev_assignments is not None and np.array_equal(assignments, prev_assignments):
            break
        if prev_wcss is not None and (prev_wcss <= 0.0
                                      or (prev_wcss - wcss) / prev_wcss < REL_TOL):
            break
        prev_assignments = assignments
        prev_wcss = wcss

    return ClusterModel(
        k=k,
        assignments=assignments,
        centroids=centroids,
        sizes=sizes,
        labels=tuple(_top_terms(c, matrix.vocabulary) for c in centroids),
        wcss=history[-1],
        seed=seed,
        iterations_run=iterations,
        doc_ids=matrix.doc_ids,
        wcss_history=tuple(history),
    )


def cluster_members(model: ClusterModel, c: int, corpus: Corpus) -> list[tuple[int, datetime.date]]:
    """(pmid, date) pairs of cluster ``c`` (0-based), newest first.

    Sorted by date descending, ties by pmid descending.
    """
    if not 0 <= c < model.k:
        raise ClusterOutOfRange(f"cluster {c} not in [0, {model.k})")
    by_pmid = corpus.by_pmid()
    pairs = [(pmid, by_pmid[pmid].date)
             for pmid, assigned in zip(model.doc_ids, model.assignments)
             if assigned == c]
    pairs.sort(key=lambda item: (item[1], item[0]), reverse=True)
    return pairs
