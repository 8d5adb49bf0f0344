"""Per-cluster exports: the downloadable HTML file and the titles listing."""

from __future__ import annotations

import datetime
import html
import re
from dataclasses import dataclass

from .cluster import cluster_members
from .session import SessionState


@dataclass(frozen=True)
class ReportEntry:
    pmid: int
    date: datetime.date
    title: str
    abstract: str


@dataclass(frozen=True)
class ClusterReport:
    cluster_index: int  # 1-based
    entries: tuple[ReportEntry, ...]  # date-descending, pmid-descending ties
    generated_at: datetime.datetime
    source_name: str


def build_cluster_report(state: SessionState, cluster: int) -> ClusterReport:
    members = cluster_members(state.model, cluster - 1, state.base_corpus)
    by_pmid = state.base_corpus.by_pmid()
    entries = tuple(
        ReportEntry(pmid=pmid, date=date, title=by_pmid[pmid].title,
                    abstract=by_pmid[pmid].abstract)
        for pmid, date in members
    )
    return ClusterReport(
        cluster_index=cluster,
        entries=entries,
        generated_at=datetime.datetime.now(datetime.timezone.utc),
        source_name=state.base_corpus.source_name,
    )


def render_titles(state: SessionState, cluster: int) -> list[tuple[int, datetime.date, str]]:
    """(pmid, date, title) rows for the selected cluster, newest first."""
    by_pmid = state.base_corpus.by_pmid()
    return [(pmid, date, by_pmid[pmid].title)
            for pmid, date in cluster_members(state.model, cluster - 1, state.base_corpus)]


def render_cluster_html(state: SessionState, cluster: int) -> str:
    """Standalone HTML document listing every publication in the cluster.

    All field values are escaped; the output is also well-formed XML so it
    can be checked structurally.  Deliberately contains nothing volatile:
    identical state renders identical bytes.
    """
    report = build_cluster_report(state, cluster)
    heading = f"{report.source_name or 'corpus'} - cluster {report.cluster_index}"
    parts = [
        "<!DOCTYPE html>",
        '<html lang="en">',
        "<head>",
        '<meta charset="utf-8"/>',
        f"<title>{html.escape(heading)}</title>",
        "<style>",
        "body { font-family: Georgia, serif; margin: 2rem auto; max-width: 52rem; padding: 0 1rem; }",
        "article { border-bottom: 1px solid #ccc; padding: 1rem 0; }",
        ".meta { color: #555; }",
        "</style>",
        "</head>",
        "<body>",
        f"<h1>{html.escape(heading)}</h1>",
        f'<p class="meta">{len(report.entries)} publications</p>',
    ]
    for entry in report.entries:
        parts.extend([
            "<article>",
            f'<p class="meta">PMID: {entry.pmid} Date: {entry.date.isoformat()}</p>',
            f"<h2>{html.escape(entry.title)}</h2>",
            f"<p>{html.escape(entry.abstract)}</p>",
            "</article>",
        ])
    parts.extend(["</body>", "</html>"])
    return "\n".join(parts)


def report_filename(state: SessionState, cluster: int) -> str:
    safe = re.sub(r"[^A-Za-z0-9._-]+", "_", state.base_corpus.source_name) or "corpus"
    return f"cluster-{cluster}-{safe}.html"
