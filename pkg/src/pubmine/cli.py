"""Headless batch driver: load a MEDLINE file, cluster, optionally drill down.

Exit codes: 0 success, 2 usage error, 3 data error (unreadable input, bad k,
empty cluster selection and friends).

The ``--summary`` output is one line per cluster in the panel format
``cluster N (size): w1 w2 w3 w4 w5 w6`` and is byte-identical across runs for
fixed (input, flags, seed).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import session as sess
from .errors import PubmineError
from .medline import parse_medline
from .report import render_cluster_html, render_titles
from .session import CREATION_K_CAP, DEFAULT_K, DEFAULT_SEED


def summary_lines(state: sess.SessionState) -> list[str]:
    return [
        f"cluster {i + 1} ({int(size)}):" + ("" if not words else " " + " ".join(words))
        for i, (size, words) in enumerate(zip(state.model.sizes, state.model.labels))
    ]


def cluster_summaries(state: sess.SessionState) -> list[dict]:
    return [
        {"cluster": i + 1, "size": int(size), "words": list(words)}
        for i, (size, words) in enumerate(zip(state.model.sizes, state.model.labels))
    ]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pubmine",
        description="Cluster the abstracts of a MEDLINE export and inspect the groups.",
    )
    parser.add_argument("--input", required=True, help="path to a MEDLINE file")
    parser.add_argument("--k", type=int, default=DEFAULT_K, help="number of clusters (default 6)")
    parser.add_argument("--exclude", default="",
                        help="space-separated words; documents containing any are removed")
    parser.add_argument("--seed", type=int, default=DEFAULT_SEED)
    parser.add_argument("--drill", default="",
                        help="comma-separated 1-based cluster indices to recursively re-cluster")
    output = parser.add_mutually_exclusive_group()
    output.add_argument("--summary", action="store_true",
                        help="print one line per cluster (default)")
    output.add_argument("--titles", action="store_true",
                        help="print PMID/date/title rows for the selected cluster")
    output.add_argument("--report", metavar="PATH",
                        help="write the selected cluster's HTML report to PATH")
    parser.add_argument("--cluster", type=int,
                        help="1-based cluster to select for --titles/--report")
    parser.add_argument("--json", action="store_true",
                        help="emit the cluster summaries as JSON instead of text")
    return parser


def run(args: argparse.Namespace) -> int:
    try:
        data = Path(args.input).read_bytes()
    except OSError as exc:
        print(f"error: cannot read {args.input}: {exc}", file=sys.stderr)
        return 3

    try:
        corpus, _ = parse_medline(data, source_name=Path(args.input).name)
        # k above the pre-load cap is requested the way the UI does it:
        # create the session within the cap, then raise k with an update
        state = sess.new_session(corpus, k=min(args.k, CREATION_K_CAP), seed=args.seed)
        exclude = args.exclude.split()
        if args.k > CREATION_K_CAP or exclude:
            state = sess.update(state, k=args.k, exclude_words=exclude)
        for index in _drill_indices(args.drill):
            state = sess.select_cluster(state, index)
            state = sess.use_cluster(state)
        if args.cluster is not None:
            state = sess.select_cluster(state, args.cluster)

        if args.titles:
            for pmid, date, title in render_titles(state, state.selected_cluster):
                print(f"{pmid}\t{date.isoformat()}\t{title}")
        elif args.report:
            html_text = render_cluster_html(state, state.selected_cluster)
            Path(args.report).write_text(html_text, encoding="utf-8")
            print(f"wrote {args.report}", file=sys.stderr)
        elif args.json:
            print(json.dumps(cluster_summaries(state), indent=2))
        else:
            for line in summary_lines(state):
                print(line)
    except PubmineError as exc:
        print(f"error: {exc.code}: {exc}", file=sys.stderr)
        return 3
    return 0


def _drill_indices(spec: str) -> list[int]:
    if not spec.strip():
        return []
    return [int(part) for part in spec.split(",") if part.strip()]


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.json and (args.titles or args.report):
        parser.error("--json only applies to the cluster summary output")
    if args.drill:
        try:
            _drill_indices(args.drill)
        except ValueError:
            parser.error("--drill must be comma-separated integers")
    return run(args)


if __name__ == "__main__":
    sys.exit(main())
