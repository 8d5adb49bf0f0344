"""Cluster PubMed abstracts from MEDLINE exports and drill into topic groups."""

from .cluster import ClusterModel, cluster_members, kmeans, label_clusters
from .errors import PubmineError
from .medline import (
    Corpus,
    IngestReport,
    MedlineRecord,
    dump_medline,
    parse_dp,
    parse_medline,
)
from .pipeline import (
    TermDocMatrix,
    TokenizedDoc,
    Vocabulary,
    build_matrix,
    build_vocabulary,
    load_stopwords,
    tokenize,
    vectorize,
)
from .report import ClusterReport, build_cluster_report, render_cluster_html, render_titles
from .session import (
    HistoryFrame,
    SessionState,
    back,
    new_session,
    select_cluster,
    update,
    use_cluster,
)

__version__ = "0.1.0"

__all__ = [
    "ClusterModel",
    "ClusterReport",
    "Corpus",
    "HistoryFrame",
    "IngestReport",
    "MedlineRecord",
    "PubmineError",
    "SessionState",
    "TermDocMatrix",
    "TokenizedDoc",
    "Vocabulary",
    "back",
    "build_cluster_report",
    "build_matrix",
    "build_vocabulary",
    "cluster_members",
    "dump_medline",
    "kmeans",
    "label_clusters",
    "load_stopwords",
    "new_session",
    "parse_dp",
    "parse_medline",
    "render_cluster_html",
    "render_titles",
    "select_cluster",
    "tokenize",
    "update",
    "use_cluster",
    "vectorize",
]
