#!/usr/bin/env python3
"""Boot the HTTP service in-process and walk a conditional session over it.

Run from the repository root:

    python3 demos/serve_and_browse.py
"""

import socket
import tempfile
import threading
import time
from pathlib import Path

import httpx
import uvicorn

from mediascene import import_legacy_episode
from mediascene.service import ContentStore, SceneRepository, SessionManager, create_app

legacy = Path(__file__).parent.parent / "tests" / "fixtures" / "legacy_two_episodes.json"

with tempfile.TemporaryDirectory() as tmp:
    repo = SceneRepository()
    repo.add(import_legacy_episode(legacy.read_bytes()))
    sessions = SessionManager(repo, Path(tmp) / "sessions.jsonl")
    app = create_app(repo, sessions, ContentStore(Path(tmp) / "content"))

    with socket.socket() as s:
        s.bind(("127.0.0.1", 0))
        port = s.getsockname()[1]
    server = uvicorn.Server(uvicorn.Config(app, host="127.0.0.1", port=port, log_level="error"))
    thread = threading.Thread(target=server.run, daemon=True)
    thread.start()
    while not server.started:
        time.sleep(0.02)
    base = f"http://127.0.0.1:{port}"
    print(f"service up at {base}")

    scene = httpx.get(f"{base}/scenes/imported-episodes")
    print(f"GET /scenes/imported-episodes -> {scene.status_code}, ETag {scene.headers['ETag'][:18]}...")

    created = httpx.post(f"{base}/scenes/imported-episodes/sessions", json={"mode": "conditional"})
    sid = created.json()["session_id"]
    print(f"new conditional session, available now: {created.json()['available']}")

    locked = httpx.post(f"{base}/sessions/{sid}/views", json={"document_id": "episode-2-content-1"})
    print(f"trying a theme-2 document first -> {locked.status_code} {locked.json()['code']}")

    for doc in ("episode-1-content-1", "episode-1-content-2"):
        res = httpx.post(f"{base}/sessions/{sid}/views", json={"document_id": doc})
        print(f"viewed {doc}: available now {res.json()['available']}")

    final = httpx.get(f"{base}/sessions/{sid}").json()
    print(f"session progress: {final['progress']:.0%}")

    server.should_exit = True
    thread.join(timeout=10)
    sessions.close()
    print("server stopped, journal flushed")
