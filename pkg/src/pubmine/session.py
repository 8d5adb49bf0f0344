"""Exploration state machine: re-cluster, drill into a cluster, unwind.

A session tokenizes its corpus once, then every operation rebuilds the
vocabulary, matrix and clustering over the current document subset (idf is
relative to whatever set is on screen).  History frames store document-id
lists plus parameters, never models: clustering is deterministic given the
session seed, so popping a frame recomputes the identical model.

Each exploration level keeps its pre-exclusion *selection* (the whole corpus
at the root, the chosen cluster's members after a drill); the working set
that actually gets clustered is always the selection minus whatever words
currently sit in the exclusion list.  Exclusion is session-global and
survives Back: returning to an earlier level re-applies the current words to
that level's selection, and clearing the words brings hidden documents back.
Matching is whole-token against raw (pre-stopword) tokens, case-insensitive.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Iterable, Mapping

from .cluster import ClusterModel, cluster_members, kmeans
from .errors import (
    AllDocumentsExcluded,
    AtRoot,
    ClusterOutOfRange,
    CorpusTooSmall,
    KOutOfRange,
    SingletonCluster,
)
from .medline import Corpus
from .pipeline import TokenizedDoc, build_matrix, build_vocabulary, tokenize

DEFAULT_K = 6
DEFAULT_SEED = 42
CREATION_K_CAP = 10  # before the corpus is known, at most 10 clusters


@dataclass(frozen=True)
class HistoryFrame:
    doc_ids: tuple[int, ...]  # the level's pre-exclusion selection
    k: int
    selected_cluster: int


@dataclass(frozen=True, eq=False)
class SessionState:
    base_corpus: Corpus
    seed: int
    token_docs: Mapping[int, TokenizedDoc]  # pmid -> tokens, fixed per session
    exclude_words: tuple[str, ...]
    selection_doc_ids: tuple[int, ...]  # current level before exclusion
    current_doc_ids: tuple[int, ...]    # selection minus excluded documents
    k: int
    model: ClusterModel
    selected_cluster: int  # 1-based, as displayed
    history: tuple[HistoryFrame, ...]

    def selected_members(self) -> list:
        return cluster_members(self.model, self.selected_cluster - 1, self.base_corpus)


def _normalize_words(words: Iterable[str]) -> tuple[str, ...]:
    seen = []
    for word in words:
        for token in word.strip().lower().split():
            if token and token not in seen:
                seen.append(token)
    return tuple(seen)


def _apply_exclusion(doc_ids: Iterable[int], exclude_words: tuple[str, ...],
                     token_docs: Mapping[int, TokenizedDoc]) -> tuple[int, ...]:
    if not exclude_words:
        return tuple(doc_ids)
    words = set(exclude_words)
    return tuple(pmid for pmid in doc_ids
                 if not words.intersection(token_docs[pmid].raw_tokens))


def _cluster(doc_ids: tuple[int, ...], k: int, seed: int,
             token_docs: Mapping[int, TokenizedDoc]) -> ClusterModel:
    docs = [token_docs[pmid] for pmid in doc_ids]
    vocab = build_vocabulary(docs)
    return kmeans(build_matrix(docs, vocab), k, seed)


def new_session(corpus: Corpus, k: int = DEFAULT_K, seed: int = DEFAULT_SEED,
                stopwords: frozenset[str] | None = None) -> SessionState:
    """Cluster the whole corpus; k is capped at 10 until the file is loaded."""
    n = len(corpus)
    if n < 3:
        raise CorpusTooSmall(f"{n} records; at least 3 required")
    if not 1 <= k <= min(CREATION_K_CAP, n - 1):
        raise KOutOfRange(
            f"k={k} not in [1, {min(CREATION_K_CAP, n - 1)}] for a new session")
    token_docs = {
        r.pmid: tokenize(r.abstract, stopwords=stopwords, pmid=r.pmid)
        for r in corpus.records
    }
    doc_ids = corpus.pmids()
    return SessionState(
        base_corpus=corpus,
        seed=seed,
        token_docs=token_docs,
        exclude_words=(),
        selection_doc_ids=doc_ids,
        current_doc_ids=doc_ids,
        k=k,
        model=_cluster(doc_ids, k, seed, token_docs),
        selected_cluster=1,
        history=(),
    )


def update(state: SessionState, k: int, exclude_words: Iterable[str]) -> SessionState:
    """Replace the exclusion set and re-cluster the level with ``k``.

    The new words apply to this level's full selection, so narrowing the list
    readmits documents a previous exclusion had hidden.  The previous frame is
    pushed and the selection resets to cluster 1.
    """
    words = _normalize_words(exclude_words)
    doc_ids = _apply_exclusion(state.selection_doc_ids, words, state.token_docs)
    if not doc_ids:
        raise AllDocumentsExcluded("the exclusion words match every document")
    if not 1 <= k <= len(doc_ids) - 1:
        raise KOutOfRange(f"k={k} not in [1, {len(doc_ids) - 1}] after exclusion")
    frame = HistoryFrame(state.selection_doc_ids, state.k, state.selected_cluster)
    return replace(
        state,
        exclude_words=words,
        current_doc_ids=doc_ids,
        k=k,
        model=_cluster(doc_ids, k, state.seed, state.token_docs),
        selected_cluster=1,
        history=state.history + (frame,),
    )


def use_cluster(state: SessionState) -> SessionState:
    """Re-cluster only the members of the selected cluster, with the same k."""
    members = tuple(
        pmid for pmid, assigned in zip(state.model.doc_ids, state.model.assignments)
        if assigned == state.selected_cluster - 1
    )
    if len(members) == 1:
        raise SingletonCluster("a single-document cluster cannot be re-clustered")
    if len(members) < state.k + 1:
        raise KOutOfRange(
            f"cluster has {len(members)} documents; lower k below {len(members)} first")
    frame = HistoryFrame(state.selection_doc_ids, state.k, state.selected_cluster)
    return replace(
        state,
        selection_doc_ids=members,
        current_doc_ids=members,  # members already satisfy the exclusions
        model=_cluster(members, state.k, state.seed, state.token_docs),
        selected_cluster=1,
        history=state.history + (frame,),
    )


def back(state: SessionState) -> SessionState:
    """Pop the top frame, minus documents matching the current exclusion set.

    k (and the restored selection) are clamped down when the current
    exclusions leave the restored set too small for the frame's k.
    """
    if not state.history:
        raise AtRoot("already at the original document set")
    frame = state.history[-1]
    doc_ids = _apply_exclusion(frame.doc_ids, state.exclude_words, state.token_docs)
    k = min(frame.k, len(doc_ids) - 1)
    selected = min(frame.selected_cluster, k)
    return replace(
        state,
        selection_doc_ids=frame.doc_ids,
        current_doc_ids=doc_ids,
        k=k,
        model=_cluster(doc_ids, k, state.seed, state.token_docs),
        selected_cluster=selected,
        history=state.history[:-1],
    )


def select_cluster(state: SessionState, cluster: int) -> SessionState:
    """Point the 1-based selection at another cluster; no history push."""
    if not 1 <= cluster <= state.model.k:
        raise ClusterOutOfRange(f"cluster {cluster} not in [1, {state.model.k}]")
    return replace(state, selected_cluster=cluster)
