"""Operator tooling: validate, import, inspect, and serve scene files.

Exit codes: 0 clean, 1 findings (content problems), 2 operational errors
(unreadable files, bad addresses). Data goes to stdout, diagnostics to
stderr; ``--json`` switches reports to machine-readable output.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from collections import Counter
from pathlib import Path

from .errors import SceneParseError
from .sceneconfig import (
    Scene,
    import_legacy_episode,
    parse_scene,
    serialize_scene,
    validate_scene_bytes,
)
from .validation import Finding

ENV_SCENE_DIR = "MEDIASCENE_SCENE_DIR"
ENV_LISTEN = "MEDIASCENE_LISTEN"
ENV_DATA_DIR = "MEDIASCENE_DATA_DIR"
ENV_VIEWER_ORIGIN = "MEDIASCENE_VIEWER_ORIGIN"


def _read_file(path: str) -> bytes:
    try:
        return Path(path).read_bytes()
    except OSError as exc:
        print(f"error: cannot read {path}: {exc}", file=sys.stderr)
        raise SystemExit(2) from None


def _print_findings(findings: list[Finding], as_json: bool) -> None:
    if as_json:
        payload = {
            "ok": not findings,
            "findings": [
                {"code": f.code, "subject": f.subject, "message": f.message} for f in findings
            ],
        }
        print(json.dumps(payload, sort_keys=True, indent=2))
    elif findings:
        for f in findings:
            print(f.render())
    else:
        print("OK")


def _cmd_validate(args: argparse.Namespace) -> int:
    findings = validate_scene_bytes(_read_file(args.scene))
    _print_findings(findings, args.json)
    return 0 if not findings else 1


def _cmd_import_legacy(args: argparse.Namespace) -> int:
    data = _read_file(args.episodes)
    try:
        scene = import_legacy_episode(data)
    except SceneParseError as exc:
        print(f"import failed: {exc.message}", file=sys.stderr)
        return 1
    try:
        Path(args.output).write_bytes(serialize_scene(scene))
    except OSError as exc:
        print(f"error: cannot write {args.output}: {exc}", file=sys.stderr)
        return 2
    print(
        f"imported {len(scene.documents)} documents / {len(scene.pins)} pins -> {args.output}",
        file=sys.stderr,
    )
    return 0


def _scene_summary(scene: Scene) -> dict:
    return {
        "scene_id": scene.scene_id,
        "title": scene.title,
        "guidance_mode": scene.guidance.mode.value,
        "documents": dict(sorted(Counter(d.kind.value for d in scene.documents).items())),
        "entities": {
            "pins": len(scene.pins),
            "web_boards": len(scene.web_boards),
            "extended_documents": len(scene.extended_documents),
            "slideshows": len(scene.slideshows),
        },
        "layers": len(scene.layer_refs),
        "tilesets": len(scene.tileset_refs),
    }


def _cmd_inspect(args: argparse.Namespace) -> int:
    data = _read_file(args.scene)
    try:
        scene = parse_scene(data)
    except SceneParseError as exc:
        print(f"inspect failed: {exc.message}", file=sys.stderr)
        return 1
    summary = _scene_summary(scene)
    if args.json:
        print(json.dumps(summary, sort_keys=True, indent=2))
    else:
        print(f"scene      {summary['scene_id']}  ({summary['title']})")
        print(f"guidance   {summary['guidance_mode']}")
        docs = ", ".join(f"{k}={n}" for k, n in summary["documents"].items()) or "none"
        print(f"documents  {docs}")
        ents = ", ".join(f"{k}={n}" for k, n in summary["entities"].items())
        print(f"entities   {ents}")
        print(f"layers     {summary['layers']}   tilesets {summary['tilesets']}")
    return 0


def _parse_listen(value: str) -> tuple[str, int]:
    host, sep, port = value.rpartition(":")
    if not sep or not host:
        raise ValueError(f"listen address must be host:port, got {value!r}")
    return host, int(port)


def _cmd_serve(args: argparse.Namespace) -> int:
    try:
        host, port = _parse_listen(args.listen)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    scene_dir = Path(args.scene_dir)
    if not scene_dir.is_dir():
        print(f"error: scene dir {scene_dir} is not a directory", file=sys.stderr)
        return 2

    import uvicorn

    from .service import ContentStore, SceneRepository, SessionManager, create_app

    try:
        repo = SceneRepository.from_dir(scene_dir)
    except RuntimeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    data_dir = Path(args.data_dir)
    sessions = SessionManager(repo, data_dir / "sessions.jsonl")
    content = ContentStore(data_dir / "content")
    app = create_app(repo, sessions, content, viewer_origin=args.viewer_origin)
    print(
        f"serving {len(repo.ids())} scene(s) on http://{host}:{port} (data in {data_dir})",
        file=sys.stderr,
    )

    # Run the server off the main thread and own SIGTERM/SIGINT here, so a
    # termination drains connections, flushes the journal, and exits 0.
    import signal
    import threading

    server = uvicorn.Server(uvicorn.Config(app, host=host, port=port, log_level="warning"))
    worker = threading.Thread(target=server.run, name="mediascene-http")
    worker.start()
    stop = threading.Event()
    previous = {
        sig: signal.signal(sig, lambda *_: stop.set())
        for sig in (signal.SIGTERM, signal.SIGINT)
    }
    try:
        while worker.is_alive() and not stop.is_set():
            stop.wait(0.2)
        server.should_exit = True
        worker.join(timeout=10.0)
    finally:
        for sig, handler in previous.items():
            signal.signal(sig, handler)
        sessions.close()
    if worker.is_alive():
        print("error: server did not stop in time", file=sys.stderr)
        return 2
    if stop.is_set():
        print("shutdown complete", file=sys.stderr)
        return 0
    return 0 if server.started else 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mediascene", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_validate = sub.add_parser("validate", help="check a scene file, exit 0 only when clean")
    p_validate.add_argument("scene", help="scene JSON file")
    p_validate.add_argument("--json", action="store_true", help="machine-readable report")
    p_validate.set_defaults(func=_cmd_validate)

    p_import = sub.add_parser("import-legacy", help="convert a legacy episode file to a scene")
    p_import.add_argument("episodes", help="legacy episode JSON file")
    p_import.add_argument("-o", "--output", required=True, help="scene file to write")
    p_import.set_defaults(func=_cmd_import_legacy)

    p_inspect = sub.add_parser("inspect", help="summarize a scene file")
    p_inspect.add_argument("scene", help="scene JSON file")
    p_inspect.add_argument("--json", action="store_true", help="machine-readable summary")
    p_inspect.set_defaults(func=_cmd_inspect)

    p_serve = sub.add_parser("serve", help="run the HTTP service")
    p_serve.add_argument(
        "--scene-dir",
        default=os.environ.get(ENV_SCENE_DIR, "."),
        help=f"directory of scene files (env {ENV_SCENE_DIR})",
    )
    p_serve.add_argument(
        "--listen",
        default=os.environ.get(ENV_LISTEN, "127.0.0.1:8000"),
        help=f"host:port to bind (env {ENV_LISTEN})",
    )
    p_serve.add_argument(
        "--data-dir",
        default=os.environ.get(ENV_DATA_DIR, "./mediascene-data"),
        help=f"journal and content directory (env {ENV_DATA_DIR})",
    )
    p_serve.add_argument(
        "--viewer-origin",
        default=os.environ.get(ENV_VIEWER_ORIGIN, "*"),
        help=f"CORS origin allowed to call the API (env {ENV_VIEWER_ORIGIN})",
    )
    p_serve.set_defaults(func=_cmd_serve)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
