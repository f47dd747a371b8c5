"""Persistence for the scene service.

Scenes are read once from a directory of scene files and held immutably.
Sessions live in memory behind per-session locks and are journaled to an
append-only JSONL file (fsync per event), so a restart replays the journal
and recovers every session. Content blobs sit on the filesystem keyed by
their sha256; a key, once written, never changes.
"""

from __future__ import annotations

import hashlib
import json
import os
import secrets
import sys
import threading
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path

from ..guidance import (
    GuidanceMode,
    GuidanceState,
    available_documents,
    new_session,
    progress,
    record_view,
)
from ..sceneconfig import Scene, parse_scene, serialize_scene

CONTENT_KEY_PREFIX = "content:"


def _now_iso() -> str:
    return datetime.now(timezone.utc).isoformat()


class ContentStore:
    """Filesystem blob store addressed by sha256 content hash."""

    def __init__(self, root: Path):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)

    def add(self, data: bytes, media_type: str) -> str:
        digest = hashlib.sha256(data).hexdigest()
        blob = self.root / f"{digest}.bin"
        meta = self.root / f"{digest}.json"
        if not blob.exists():
            tmp = blob.with_suffix(".tmp")
            tmp.write_bytes(data)
            tmp.rename(blob)
            meta.write_text(
                json.dumps({"media_type": media_type, "length": len(data)}),
                encoding="utf-8",
            )
        return CONTENT_KEY_PREFIX + digest

    def get(self, key: str) -> tuple[bytes, str] | None:
        if not key.startswith(CONTENT_KEY_PREFIX):
            return None
        digest = key[len(CONTENT_KEY_PREFIX):]
        blob = self.root / f"{digest}.bin"
        meta = self.root / f"{digest}.json"
        if not blob.exists() or not meta.exists():
            return None
        info = json.loads(meta.read_text(encoding="utf-8"))
        return blob.read_bytes(), info.get("media_type", "application/octet-stream")


@dataclass(frozen=True)
class SceneEntry:
    scene: Scene
    canonical: bytes
    etag: str


class SceneRepository:
    """Immutable, read-mostly set of scenes served by one process."""

    def __init__(self):
        self._entries: dict[str, SceneEntry] = {}

    def add(self, scene: Scene) -> SceneEntry:
        canonical = serialize_scene(scene)
        etag = '"' + hashlib.sha256(canonical).hexdigest() + '"'
        entry = SceneEntry(scene, canonical, etag)
        self._entries[scene.scene_id] = entry
        return entry

    @classmethod
    def from_dir(cls, scene_dir: Path) -> "SceneRepository":
        repo = cls()
        for path in sorted(Path(scene_dir).glob("*.json")):
            try:
                repo.add(parse_scene(path.read_bytes()))
            except Exception as exc:
                raise RuntimeError(f"failed to load scene file {path}: {exc}") from exc
        return repo

    def get(self, scene_id: str) -> SceneEntry | None:
        return self._entries.get(scene_id)

    def ids(self) -> list[str]:
        return sorted(self._entries)

    def find_document(self, document_id: str):
        for scene_id in self.ids():
            doc = self._entries[scene_id].scene.document(document_id)
            if doc is not None:
                return doc
        return None


@dataclass
class SessionRecord:
    session_id: str
    scene_id: str
    state: GuidanceState
    created_at: str
    updated_at: str


class SessionManager:
    """Guidance sessions with per-session serialization and a journal.

    All mutations of one session happen under that session's lock, so
    concurrent view posts are applied in a single total order and the
    journal lines reproduce exactly the accepted updates.
    """

    def __init__(self, repo: SceneRepository, journal_path: Path | None = None):
        self._repo = repo
        self._sessions: dict[str, SessionRecord] = {}
        self._locks: dict[str, threading.Lock] = {}
        self._mutex = threading.Lock()
        self._journal_path = Path(journal_path) if journal_path else None
        self._journal = None
        if self._journal_path is not None:
            self._journal_path.parent.mkdir(parents=True, exist_ok=True)
            if self._journal_path.exists():
                self._replay()
            self._journal = open(self._journal_path, "a", encoding="utf-8")

    def _append_journal(self, event: dict) -> None:
        if self._journal is None:
            return
        self._journal.write(json.dumps(event, sort_keys=True) + "\n")
        self._journal.flush()
        os.fsync(self._journal.fileno())

    def _replay(self) -> None:
        assert self._journal_path is not None
        for line in self._journal_path.read_text(encoding="utf-8").splitlines():
            if not line.strip():
                continue
            try:
                event = json.loads(line)
                kind = event.get("event")
                if kind == "session_created":
                    entry = self._repo.get(event["scene_id"])
                    if entry is None:
                        continue
                    state = new_session(entry.scene, GuidanceMode(event["mode"]))
                    self._sessions[event["session_id"]] = SessionRecord(
                        event["session_id"],
                        event["scene_id"],
                        state,
                        event["ts"],
                        event["ts"],
                    )
                    self._locks[event["session_id"]] = threading.Lock()
                elif kind == "view_recorded":
                    record = self._sessions.get(event["session_id"])
                    if record is None:
                        continue
                    entry = self._repo.get(record.scene_id)
                    if entry is None:
                        continue
                    record.state = record_view(record.state, event["document_id"], entry.scene)
                    record.updated_at = event["ts"]
            except Exception as exc:
                print(f"journal replay: skipping line ({exc})", file=sys.stderr)

    def create(self, scene_id: str, mode: GuidanceMode | None) -> tuple[SessionRecord, frozenset[str]]:
        entry = self._repo.get(scene_id)
        if entry is None:
            raise KeyError(scene_id)
        state = new_session(entry.scene, mode)
        session_id = secrets.token_urlsafe(16)
        ts = _now_iso()
        record = SessionRecord(session_id, scene_id, state, ts, ts)
        with self._mutex:
            self._sessions[session_id] = record
            self._locks[session_id] = threading.Lock()
            self._append_journal(
                {
                    "event": "session_created",
                    "session_id": session_id,
                    "scene_id": scene_id,
                    "mode": state.mode.value,
                    "ts": ts,
                }
            )
        return record, available_documents(state, entry.scene)

    def _lock_for(self, session_id: str) -> tuple[threading.Lock, SessionRecord]:
        with self._mutex:
            record = self._sessions.get(session_id)
            if record is None:
                raise KeyError(session_id)
            return self._locks[session_id], record

    def view(self, session_id: str, document_id: str) -> tuple[SessionRecord, frozenset[str]]:
        lock, record = self._lock_for(session_id)
        entry = self._repo.get(record.scene_id)
        assert entry is not None
        with lock:
            new_state = record_view(record.state, document_id, entry.scene)
            ts = _now_iso()
            record.state = new_state
            record.updated_at = ts
            self._append_journal(
                {
                    "event": "view_recorded",
                    "session_id": session_id,
                    "document_id": document_id,
                    "ts": ts,
                }
            )
            return record, available_documents(new_state, entry.scene)

    def get(self, session_id: str) -> tuple[SessionRecord, frozenset[str], float]:
        lock, record = self._lock_for(session_id)
        entry = self._repo.get(record.scene_id)
        assert entry is not None
        with lock:
            return (
                record,
                available_documents(record.state, entry.scene),
                progress(record.state, entry.scene),
            )

    def close(self) -> None:
        if self._journal is not None:
            self._journal.close()
            self._journal = None
