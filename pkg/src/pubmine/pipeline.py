"""Abstract text -> tokens -> TF-IDF term-document matrix.

Tokenization is deliberately blunt: lowercase, split on every non-alphabetic
character, keep single letters, no stemming.  Stopwords come from the SMART
English list shipped as ``data/stopwords.txt`` and can be overridden with any
plain-text file (one word per line).

Weights are tf * ln(N/df) with L2 row normalization, recomputed over the
current document set on every clustering run, so drilling into a cluster
re-derives idf for the narrowed corpus.
"""

from __future__ import annotations

import math
import re
from collections import Counter
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Iterable, Mapping, Sequence

import numpy as np
from scipy import sparse

from .errors import DimensionMismatch, EmptyVocabulary

_WORD_RE = re.compile(r"[a-z]+")

_default_stopwords: frozenset[str] | None = None


def load_stopwords(path: str | Path | None = None) -> frozenset[str]:
    """Load a stopword list, one word per line; the packaged list by default."""
    if path is None:
        text = resources.files("pubmine.data").joinpath("stopwords.txt").read_text("utf-8")
    else:
        text = Path(path).read_text("utf-8")
    return frozenset(w.strip().lower() for w in text.splitlines() if w.strip())


def default_stopwords() -> frozenset[str]:
    global _default_stopwords
    if _default_stopwords is None:
        _default_stopwords = load_stopwords()
    return _default_stopwords


@dataclass(frozen=True)
class TokenizedDoc:
    pmid: int
    raw_tokens: tuple[str, ...]
    tokens: tuple[str, ...]


def tokenize(text: str, stopwords: frozenset[str] | None = None, pmid: int = 0) -> TokenizedDoc:
    """Lowercase and split on non-alphabetic characters.

    ``raw_tokens`` is every alphabetic run (length >= 1, so "rt-PA" yields
    "rt" and "pa"); ``tokens`` is the same sequence with stopwords removed.
    """
    if stopwords is None:
        stopwords = default_stopwords()
    raw = tuple(_WORD_RE.findall(text.lower()))
    kept = tuple(t for t in raw if t not in stopwords)
    return TokenizedDoc(pmid=pmid, raw_tokens=raw, tokens=kept)


@dataclass(frozen=True)
class Vocabulary:
    terms: tuple[str, ...]
    index: Mapping[str, int]
    doc_freq: Mapping[str, int]

    def __len__(self) -> int:
        return len(self.terms)


def build_vocabulary(docs: Sequence[TokenizedDoc]) -> Vocabulary:
    """Union of all tokens, sorted lexicographically; df counts documents.

    No frequency pruning: a term appearing in a single document is kept.
    """
    df: Counter[str] = Counter()
    for doc in docs:
        df.update(set(doc.tokens))
    if not df:
        raise EmptyVocabulary("every document has an empty token list")
    terms = tuple(sorted(df))
    return Vocabulary(
        terms=terms,
        index={t: i for i, t in enumerate(terms)},
        doc_freq={t: df[t] for t in terms},
    )


@dataclass(frozen=True, eq=False)
class TermDocMatrix:
    n_docs: int
    n_terms: int
    matrix: sparse.csr_matrix  # rows unit-norm unless flagged in zero_rows
    vocabulary: Vocabulary
    doc_ids: tuple[int, ...]
    zero_rows: frozenset[int]

    def row(self, i: int) -> list[tuple[int, float]]:
        """Sparse (column, weight) entries of row ``i``, columns ascending."""
        start, end = self.matrix.indptr[i], self.matrix.indptr[i + 1]
        return list(zip(self.matrix.indices[start:end].tolist(),
                        self.matrix.data[start:end].tolist()))


def build_matrix(docs: Sequence[TokenizedDoc], vocab: Vocabulary) -> TermDocMatrix:
    """TF-IDF matrix: weight(d,t) = tf * ln(N/df), rows scaled to unit norm.

    Terms present in every document get idf 0 and drop out of the sparse
    structure; a document whose every term has df = N ends up as an all-zero
    row and is flagged in ``zero_rows`` instead of being normalized.
    """
    n = len(docs)
    idf = {t: math.log(n / df) for t, df in vocab.doc_freq.items()}

    indptr = [0]
    indices: list[int] = []
    data: list[float] = []
    zero_rows = []
    for ri, doc in enumerate(docs):
        entries = []
        for tok, tf in Counter(doc.tokens).items():
            col = vocab.index.get(tok)
            if col is None:
                raise DimensionMismatch(f"token {tok!r} not in vocabulary")
            w = tf * idf[tok]
            if w != 0.0:
                entries.append((col, w))
        entries.sort()
        norm = math.sqrt(sum(w * w for _, w in entries))
        if norm == 0.0:
            zero_rows.append(ri)
        else:
            indices.extend(c for c, _ in entries)
            data.extend(w / norm for _, w in entries)
        indptr.append(len(indices))

    matrix = sparse.csr_matrix(
        (np.asarray(data), np.asarray(indices, dtype=np.int32), np.asarray(indptr, dtype=np.int32)),
        shape=(n, len(vocab.terms)),
    )
    return TermDocMatrix(
        n_docs=n,
        n_terms=len(vocab.terms),
        matrix=matrix,
        vocabulary=vocab,
        doc_ids=tuple(d.pmid for d in docs),
        zero_rows=frozenset(zero_rows),
    )


def vectorize(docs: Sequence[TokenizedDoc]) -> TermDocMatrix:
    """Vocabulary + matrix in one step over the given document set."""
    return build_matrix(docs, build_vocabulary(docs))
