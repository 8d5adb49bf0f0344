"""Independent oracles and fixture builders shared across test modules.

Everything here recomputes results from first principles (plain loops over
dense arrays) so the implementation under test never checks itself.
"""

import itertools
import string

import numpy as np
from scipy import sparse

from pubmine.pipeline import TermDocMatrix, Vocabulary


def term_names(n: int) -> list[str]:
    """n distinct purely-alphabetic term names: aa, ab, ac, ..."""
    names = []
    for combo in itertools.product(string.ascii_lowercase, repeat=3):
        names.append("".join(combo))
        if len(names) == n:
            return names
    raise ValueError("too many terms requested")


def matrix_from_dense(rows: np.ndarray, doc_ids=None) -> TermDocMatrix:
    """Wrap a dense array (rows already weighted/normalized) as a TermDocMatrix."""
    rows = np.asarray(rows, dtype=float)
    n, m = rows.shape
    terms = tuple(term_names(m))
    vocab = Vocabulary(
        terms=terms,
        index={t: i for i, t in enumerate(terms)},
        doc_freq={t: 1 for t in terms},
    )
    zero = frozenset(i for i in range(n) if not rows[i].any())
    return TermDocMatrix(
        n_docs=n,
        n_terms=m,
        matrix=sparse.csr_matrix(rows),
        vocabulary=vocab,
        doc_ids=tuple(doc_ids) if doc_ids is not None else tuple(range(1, n + 1)),
        zero_rows=zero,
    )


def random_unit_rows(n: int, dims: int, rng: np.random.Generator) -> np.ndarray:
    rows = np.abs(rng.normal(size=(n, dims)))
    return rows / np.linalg.norm(rows, axis=1, keepdims=True)


def clumped_unit_rows(n_per_clump: int, clumps: int, dims_per_clump: int,
                      rng: np.random.Generator) -> np.ndarray:
    """Well-separated clumps on disjoint coordinate blocks."""
    blocks = []
    for c in range(clumps):
        block = np.zeros((n_per_clump, clumps * dims_per_clump))
        local = np.abs(rng.normal(size=(n_per_clump, dims_per_clump))) + 0.2
        block[:, c * dims_per_clump:(c + 1) * dims_per_clump] = local
        blocks.append(block)
    rows = np.vstack(blocks)
    return rows / np.linalg.norm(rows, axis=1, keepdims=True)


def wcss_of_assignment(rows: np.ndarray, assign, k: int) -> float:
    """Objective for a given assignment with mean centroids, by direct loops."""
    total = 0.0
    for c in range(k):
        members = [i for i, a in enumerate(assign) if a == c]
        if not members:
            continue
        centroid = rows[members].mean(axis=0)
        for i in members:
            diff = rows[i] - centroid
            total += float(diff @ diff)
    return total


def exhaustive_best_wcss(rows: np.ndarray, k: int) -> float:
    """Minimum objective over every assignment of n docs to at most k clusters."""
    n = len(rows)
    best = float("inf")
    for assign in itertools.product(range(k), repeat=n):
        best = min(best, wcss_of_assignment(rows, assign, k))
    return best


def nearest_centroid_scan(rows: np.ndarray, centroids: np.ndarray) -> np.ndarray:
    """Per-document nearest centroid by direct distance scan, lowest index ties."""
    out = np.empty(len(rows), dtype=int)
    for i, row in enumerate(rows):
        best_c, best_d = 0, float("inf")
        for c, centroid in enumerate(centroids):
            diff = row - centroid
            d = float(diff @ diff)
            if d < best_d:
                best_c, best_d = c, d
        out[i] = best_c
    return out
