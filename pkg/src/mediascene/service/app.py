"""HTTP API over scenes, document content, and guidance sessions.

All errors come back as ``{"code", "message", ...}`` JSON bodies. Scene
payloads are served in canonical serialization with a content-hash ETag.
Session mutations are serialized per session by the storage layer, so the
endpoints can run on any number of worker threads.
"""

from __future__ import annotations

import re

import httpx
from fastapi import FastAPI, Request, Response
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse, RedirectResponse
from pydantic import BaseModel

from ..documents import MediaKind
from ..errors import (
    DanglingReferenceError,
    LockedContentError,
    MediasceneError,
    MisconfiguredGuidanceError,
    SceneParseError,
)
from ..guidance import GuidanceMode
from .storage import CONTENT_KEY_PREFIX, ContentStore, SceneRepository, SessionManager

_PROXY_TIMEOUT_S = 10.0
_RANGE_RE = re.compile(r"^bytes=(\d*)-(\d*)$")


class SessionCreateBody(BaseModel):
    mode: str | None = None


class ViewBody(BaseModel):
    document_id: str


def _error(status: int, code: str, message: str, **extra) -> JSONResponse:
    return JSONResponse({"code": code, "message": message, **extra}, status_code=status)


def _status_for(exc: MediasceneError) -> int:
    if isinstance(exc, LockedContentError):
        return 409
    if isinstance(exc, DanglingReferenceError):
        return 404
    if isinstance(exc, MisconfiguredGuidanceError):
        return 422
    return 400


def _parse_range(header: str | None, total: int) -> tuple[int, int] | None:
    if not header:
        return None
    m = _RANGE_RE.match(header.strip())
    if not m:
        return None
    start_raw, end_raw = m.group(1), m.group(2)
    if start_raw == "" and end_raw == "":
        return None
    if start_raw == "":
        length = min(int(end_raw), total)
        if length == 0:
            return None
        return total - length, total - 1
    start = int(start_raw)
    if start >= total:
        return None
    end = min(int(end_raw), total - 1) if end_raw else total - 1
    if end < start:
        return None
    return start, end


def create_app(
    repo: SceneRepository,
    sessions: SessionManager,
    content: ContentStore,
    viewer_origin: str = "*",
) -> FastAPI:
    app = FastAPI(title="mediascene service", docs_url=None, redoc_url=None)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=[viewer_origin],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.exception_handler(MediasceneError)
    async def handle_domain_error(_req: Request, exc: MediasceneError):
        extra = {}
        if isinstance(exc, LockedContentError):
            extra["document_id"] = exc.document_id
        if isinstance(exc, SceneParseError) and hasattr(exc, "path"):
            extra["field_path"] = exc.path
        return _error(_status_for(exc), exc.code, exc.message, **extra)

    @app.exception_handler(RequestValidationError)
    async def handle_validation_error(_req: Request, exc: RequestValidationError):
        first = exc.errors()[0] if exc.errors() else {}
        field_path = ".".join(str(loc) for loc in first.get("loc", ()))
        return _error(400, "invalid_request", first.get("msg", "invalid request body"), field_path=field_path)

    @app.get("/scenes/{scene_id}")
    def get_scene(scene_id: str, request: Request):
        entry = repo.get(scene_id)
        if entry is None:
            return _error(404, "unknown_scene", f"no scene {scene_id!r}")
        if request.headers.get("if-none-match") == entry.etag:
            return Response(status_code=304, headers={"ETag": entry.etag})
        return Response(
            content=entry.canonical,
            media_type="application/json",
            headers={"ETag": entry.etag},
        )

    @app.get("/documents/{document_id}/content")
    def get_document_content(document_id: str, request: Request):
        doc = repo.find_document(document_id)
        if doc is None:
            return _error(404, "unknown_document", f"no document {document_id!r}")
        if doc.kind is MediaKind.WEB_PAGE:
            return RedirectResponse(doc.source, status_code=307)
        if doc.source.startswith(CONTENT_KEY_PREFIX):
            stored = content.get(doc.source)
            if stored is None:
                return _error(404, "content_not_stored", f"content key {doc.source!r} is empty")
            data, media_type = stored
            rng = _parse_range(request.headers.get("range"), len(data))
            if rng is not None:
                start, end = rng
                return Response(
                    content=data[start : end + 1],
                    status_code=206,
                    media_type=media_type,
                    headers={
                        "Content-Range": f"bytes {start}-{end}/{len(data)}",
                        "Accept-Ranges": "bytes",
                    },
                )
            return Response(content=data, media_type=media_type, headers={"Accept-Ranges": "bytes"})
        if doc.source.startswith(("http://", "https://")):
            try:
                upstream = httpx.get(doc.source, timeout=_PROXY_TIMEOUT_S, follow_redirects=True)
            except httpx.HTTPError as exc:
                return _error(502, "bad_gateway", f"source unreachable: {exc}")
            if upstream.status_code >= 400:
                return _error(502, "bad_gateway", f"source answered {upstream.status_code}")
            return Response(
                content=upstream.content,
                media_type=upstream.headers.get("content-type", "application/octet-stream"),
            )
        return _error(404, "content_not_stored", f"document {document_id!r} has no stored content")

    @app.post("/scenes/{scene_id}/sessions", status_code=201)
    def create_session(scene_id: str, body: SessionCreateBody):
        mode = None
        if body.mode is not None:
            try:
                mode = GuidanceMode(body.mode)
            except ValueError:
                return _error(400, "invalid_request", f"unknown guidance mode {body.mode!r}", field_path="mode")
        try:
            record, available = sessions.create(scene_id, mode)
        except KeyError:
            return _error(404, "unknown_scene", f"no scene {scene_id!r}")
        return {
            "session_id": record.session_id,
            "scene_id": record.scene_id,
            "mode": record.state.mode.value,
            "viewed": sorted(record.state.viewed),
            "available": sorted(available),
        }

    @app.post("/sessions/{session_id}/views")
    def record_session_view(session_id: str, body: ViewBody):
        try:
            record, available = sessions.view(session_id, body.document_id)
        except KeyError:
            return _error(404, "unknown_session", f"no session {session_id!r}")
        return {
            "session_id": record.session_id,
            "viewed": sorted(record.state.viewed),
            "available": sorted(available),
        }

    @app.get("/sessions/{session_id}")
    def get_session(session_id: str):
        try:
            record, available, done = sessions.get(session_id)
        except KeyError:
            return _error(404, "unknown_session", f"no session {session_id!r}")
        return {
            "session_id": record.session_id,
            "scene_id": record.scene_id,
            "mode": record.state.mode.value,
            "viewed": sorted(record.state.viewed),
            "available": sorted(available),
            "progress": done,
            "created_at": record.created_at,
            "updated_at": record.updated_at,
        }

    return app
