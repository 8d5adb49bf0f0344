"""HTTP facade over sessions.

Routes (all JSON unless noted):

    POST /api/session                          multipart field "medline" (+ optional k, seed)
    POST /api/session/{id}/update              {"k": int, "exclude_words": [str]}
    POST /api/session/{id}/use-cluster
    POST /api/session/{id}/back
    POST /api/session/{id}/select              {"cluster": int}
    GET  /api/session/{id}/clusters
    GET  /api/session/{id}/cluster/{c}/documents
    GET  /api/session/{id}/cluster/{c}/abstract/{position}
    GET  /api/session/{id}/cluster/{c}/titles
    GET  /api/session/{id}/cluster/{c}/report  text/html attachment

Sessions live in memory, one lock each: mutations on a session are serialized,
distinct sessions are independent.  Idle sessions expire after a TTL.
Errors come back as {"detail": {"code": ..., "message": ...}} with 400 for
unparsable uploads, 404 for unknown sessions, 409 for Back at the root, 413
for oversized uploads, 416 for pager positions out of range and 422 for the
rest.
"""

from __future__ import annotations

import argparse
import os
import secrets
import threading
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

from fastapi import FastAPI, File, Form, Request, UploadFile
from fastapi.responses import JSONResponse, Response
from pydantic import BaseModel

from . import session as sess
from .cluster import cluster_members
from .errors import (
    AtRoot,
    EmptyInput,
    NoValidRecords,
    PubmineError,
)
from .medline import IngestReport, parse_medline
from .pipeline import load_stopwords
from .report import (
    build_cluster_report,
    render_cluster_html,
    render_titles,
    report_filename,
)
from .session import SessionState

DEFAULT_TTL_SECONDS = 2 * 60 * 60
DEFAULT_UPLOAD_LIMIT = 50 * 1024 * 1024


class SessionNotFound(Exception):
    pass


class PositionOutOfRange(Exception):
    pass

_STATUS_BY_ERROR = {
    EmptyInput: 400,
    NoValidRecords: 400,
    AtRoot: 409,
}


@dataclass
class ServiceConfig:
    port: int = 8000
    seed: int = sess.DEFAULT_SEED
    session_ttl: float = DEFAULT_TTL_SECONDS
    upload_limit: int = DEFAULT_UPLOAD_LIMIT
    stopwords_path: str | None = None
    static_dir: str | None = None

    @classmethod
    def from_env(cls, env=os.environ) -> "ServiceConfig":
        cfg = cls()
        if "PUBMINE_PORT" in env:
            cfg.port = int(env["PUBMINE_PORT"])
        if "PUBMINE_SEED" in env:
            cfg.seed = int(env["PUBMINE_SEED"])
        if "PUBMINE_SESSION_TTL" in env:
            cfg.session_ttl = float(env["PUBMINE_SESSION_TTL"])
        if "PUBMINE_UPLOAD_LIMIT" in env:
            cfg.upload_limit = int(env["PUBMINE_UPLOAD_LIMIT"])
        if "PUBMINE_STOPWORDS" in env:
            cfg.stopwords_path = env["PUBMINE_STOPWORDS"]
        if "PUBMINE_STATIC" in env:
            cfg.static_dir = env["PUBMINE_STATIC"]
        return cfg


@dataclass
class SessionHandle:
    session_id: str
    created_at: float
    last_access: float
    state: SessionState
    lock: threading.Lock = field(default_factory=threading.Lock)


class SessionRegistry:
    """In-memory session store with idle-TTL expiry; sweep runs on access."""

    def __init__(self, ttl: float, clock: Callable[[], float] = time.monotonic):
        self._ttl = ttl
        self._clock = clock
        self._lock = threading.Lock()
        self._handles: dict[str, SessionHandle] = {}

    def create(self, state: SessionState) -> SessionHandle:
        now = self._clock()
        handle = SessionHandle(
            session_id=secrets.token_urlsafe(16),
            created_at=now,
            last_access=now,
            state=state,
        )
        with self._lock:
            self._sweep(now)
            self._handles[handle.session_id] = handle
        return handle

    def get(self, session_id: str) -> SessionHandle:
        now = self._clock()
        with self._lock:
            self._sweep(now)
            handle = self._handles.get(session_id)
            if handle is None:
                raise KeyError(session_id)
            handle.last_access = now
            return handle

    def _sweep(self, now: float) -> None:
        expired = [sid for sid, h in self._handles.items()
                   if now - h.last_access > self._ttl]
        for sid in expired:
            del self._handles[sid]

    def __len__(self) -> int:
        with self._lock:
            return len(self._handles)


class UpdateRequest(BaseModel):
    k: int
    exclude_words: list[str]


class SelectRequest(BaseModel):
    cluster: int


def _summaries(state: SessionState) -> list[dict]:
    return [
        {"cluster": i + 1, "size": int(size), "words": list(words)}
        for i, (size, words) in enumerate(zip(state.model.sizes, state.model.labels))
    ]


def _session_view(handle: SessionHandle, ingest: IngestReport | None = None) -> dict:
    state = handle.state
    view = {
        "session_id": handle.session_id,
        "source_name": state.base_corpus.source_name,
        "k": state.k,
        "selected_cluster": state.selected_cluster,
        "n_documents": len(state.current_doc_ids),
        "max_k": len(state.current_doc_ids) - 1,
        "exclude_words": list(state.exclude_words),
        "can_go_back": bool(state.history),
        "clusters": _summaries(state),
    }
    if ingest is not None:
        view["ingest"] = {
            "total_records": ingest.total_records,
            "kept": ingest.kept,
            "dropped_no_abstract": ingest.dropped_no_abstract,
            "duplicate_pmids": ingest.duplicate_pmids,
            "malformed_lines": ingest.malformed_lines,
        }
    return view


def _error_response(status: int, code: str, message: str) -> JSONResponse:
    return JSONResponse(status_code=status,
                        content={"detail": {"code": code, "message": message}})


def create_app(config: ServiceConfig | None = None,
               clock: Callable[[], float] = time.monotonic) -> FastAPI:
    cfg = config or ServiceConfig.from_env()
    stopwords = load_stopwords(cfg.stopwords_path) if cfg.stopwords_path else None
    registry = SessionRegistry(ttl=cfg.session_ttl, clock=clock)

    app = FastAPI(title="pubmine", version="0.1.0")
    app.state.registry = registry
    app.state.config = cfg

    @app.exception_handler(PubmineError)
    async def handle_domain_error(request: Request, exc: PubmineError):
        status = _STATUS_BY_ERROR.get(type(exc), 422)
        return _error_response(status, exc.code, str(exc))

    def get_handle(session_id: str) -> SessionHandle:
        try:
            return registry.get(session_id)
        except KeyError:
            raise SessionNotFound()

    @app.exception_handler(SessionNotFound)
    async def handle_unknown_session(request: Request, exc: "SessionNotFound"):
        return _error_response(404, "unknown_session", "unknown or expired session")

    @app.exception_handler(PositionOutOfRange)
    async def handle_position(request: Request, exc: "PositionOutOfRange"):
        return _error_response(416, "position_out_of_range", str(exc))

    @app.post("/api/session")
    async def create_session(medline: UploadFile = File(...),
                             k: int | None = Form(None),
                             seed: int | None = Form(None)):
        data = await medline.read()
        if len(data) > cfg.upload_limit:
            return _error_response(413, "upload_too_large",
                                   f"upload exceeds {cfg.upload_limit} bytes")
        corpus, ingest = parse_medline(data, source_name=medline.filename or "upload")
        state = sess.new_session(
            corpus,
            k=k if k is not None else sess.DEFAULT_K,
            seed=seed if seed is not None else cfg.seed,
            stopwords=stopwords,
        )
        handle = registry.create(state)
        return _session_view(handle, ingest=ingest)

    @app.post("/api/session/{session_id}/update")
    def update_session(session_id: str, body: UpdateRequest):
        handle = get_handle(session_id)
        with handle.lock:
            handle.state = sess.update(handle.state, k=body.k,
                                       exclude_words=body.exclude_words)
            return _session_view(handle)

    @app.post("/api/session/{session_id}/use-cluster")
    def use_cluster(session_id: str):
        handle = get_handle(session_id)
        with handle.lock:
            handle.state = sess.use_cluster(handle.state)
            return _session_view(handle)

    @app.post("/api/session/{session_id}/back")
    def go_back(session_id: str):
        handle = get_handle(session_id)
        with handle.lock:
            handle.state = sess.back(handle.state)
            return _session_view(handle)

    @app.post("/api/session/{session_id}/select")
    def select_cluster(session_id: str, body: SelectRequest):
        handle = get_handle(session_id)
        with handle.lock:
            handle.state = sess.select_cluster(handle.state, body.cluster)
            state = handle.state
            members = state.selected_members()
        return {
            "cluster": state.selected_cluster,
            "total": len(members),
            "documents": [{"pmid": pmid, "date": date.isoformat()}
                          for pmid, date in members],
        }

    @app.get("/api/session/{session_id}/clusters")
    def get_clusters(session_id: str):
        return _session_view(get_handle(session_id))

    @app.get("/api/session/{session_id}/cluster/{cluster}/documents")
    def get_documents(session_id: str, cluster: int):
        handle = get_handle(session_id)
        members = cluster_members(handle.state.model, cluster - 1,
                                  handle.state.base_corpus)
        return {
            "cluster": cluster,
            "total": len(members),
            "documents": [{"pmid": pmid, "date": date.isoformat()}
                          for pmid, date in members],
        }

    @app.get("/api/session/{session_id}/cluster/{cluster}/abstract/{position}")
    def get_abstract(session_id: str, cluster: int, position: int):
        handle = get_handle(session_id)
        report = build_cluster_report(handle.state, cluster)
        if not 0 <= position < len(report.entries):
            raise PositionOutOfRange(
                f"position {position} not in [0, {len(report.entries)})")
        entry = report.entries[position]
        return {
            "pmid": entry.pmid,
            "date": entry.date.isoformat(),
            "title": entry.title,
            "abstract": entry.abstract,
            "position": position,
            "total": len(report.entries),
        }

    @app.get("/api/session/{session_id}/cluster/{cluster}/titles")
    def get_titles(session_id: str, cluster: int):
        handle = get_handle(session_id)
        rows = render_titles(handle.state, cluster)
        return {
            "cluster": cluster,
            "titles": [{"pmid": pmid, "date": date.isoformat(), "title": title}
                       for pmid, date, title in rows],
        }

    @app.get("/api/session/{session_id}/cluster/{cluster}/report")
    def get_report(session_id: str, cluster: int):
        handle = get_handle(session_id)
        html_text = render_cluster_html(handle.state, cluster)
        filename = report_filename(handle.state, cluster)
        return Response(
            content=html_text,
            media_type="text/html; charset=utf-8",
            headers={"Content-Disposition": f'attachment; filename="{filename}"'},
        )

    if cfg.static_dir:
        from fastapi.staticfiles import StaticFiles
        app.mount("/", StaticFiles(directory=cfg.static_dir, html=True), name="ui")

    return app


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(prog="pubmine-serve",
                                     description="Run the clustering HTTP service.")
    parser.add_argument("--port", type=int)
    parser.add_argument("--host", default="127.0.0.1")
    parser.add_argument("--seed", type=int)
    parser.add_argument("--session-ttl", type=float, help="idle expiry in seconds")
    parser.add_argument("--upload-limit", type=int, help="max upload size in bytes")
    parser.add_argument("--stopwords", help="path to an alternative stopword list")
    parser.add_argument("--static", help="directory with the browser UI to serve at /")
    args = parser.parse_args(argv)

    cfg = ServiceConfig.from_env()
    if args.port is not None:
        cfg.port = args.port
    if args.seed is not None:
        cfg.seed = args.seed
    if args.session_ttl is not None:
        cfg.session_ttl = args.session_ttl
    if args.upload_limit is not None:
        cfg.upload_limit = args.upload_limit
    if args.stopwords:
        cfg.stopwords_path = args.stopwords
    if args.static:
        cfg.static_dir = str(Path(args.static).resolve())

    import uvicorn
    uvicorn.run(create_app(cfg), host=args.host, port=cfg.port, log_level="info")
    return 0


if __name__ == "__main__":
    import sys
    sys.exit(main())
