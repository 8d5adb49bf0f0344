"""Domain error types.

Every error carries a stable machine-readable ``code`` so the HTTP layer and
the CLI can report failures without string matching on messages.
"""


class PubmineError(Exception):
    code = "error"


class EmptyInput(PubmineError):
    """The uploaded file contains no record blocks at all."""

    code = "empty_input"


class NoValidRecords(PubmineError):
    """Record blocks exist but none carries a PMID field."""

    code = "no_valid_records"


class UnparsableDate(PubmineError):
    """A DP value without a leading 4-digit year."""

    code = "unparsable_date"


class EmptyVocabulary(PubmineError):
    """Every document lost all of its tokens; nothing to cluster on."""

    code = "empty_vocabulary"


class DimensionMismatch(PubmineError):
    """A token has no column in the vocabulary it is being matched against."""

    code = "dimension_mismatch"


class KOutOfRange(PubmineError):
    code = "k_out_of_range"


class KTooSmall(KOutOfRange):
    code = "k_out_of_range"


class KTooLarge(KOutOfRange):
    code = "k_out_of_range"


class DegenerateMatrix(PubmineError):
    """All rows are zero vectors; no geometry to cluster."""

    code = "degenerate_matrix"


class ClusterOutOfRange(PubmineError):
    code = "cluster_out_of_range"


class CorpusTooSmall(PubmineError):
    code = "corpus_too_small"


class AllDocumentsExcluded(PubmineError):
    code = "all_documents_excluded"


class SingletonCluster(PubmineError):
    """A one-document cluster cannot be re-clustered."""

    code = "singleton_cluster"


class AtRoot(PubmineError):
    """Back was requested but the history stack is empty."""

    code = "at_root"
