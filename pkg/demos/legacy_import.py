#!/usr/bin/env python3
"""Lift a legacy episode file into a validated scene configuration.

Run from the repository root:

    python3 demos/legacy_import.py
"""

from pathlib import Path

from mediascene import import_legacy_episode, serialize_scene, validate_scene

legacy = Path(__file__).parent.parent / "tests" / "fixtures" / "legacy_two_episodes.json"
scene = import_legacy_episode(legacy.read_bytes())

print(f"imported scene {scene.scene_id!r}: {len(scene.documents)} documents, {len(scene.pins)} pins")
for pin in scene.pins:
    state = "active" if pin.activated else "locked"
    print(f"  pin {pin.entity_id:28s} at ({pin.anchor.x:.2f}, {pin.anchor.y:.2f}, {pin.anchor.z:.1f})  [{state}]")

print("\nepisode chaining (conditional prerequisites):")
for doc_id in sorted(scene.document_ids):
    reqs = sorted(scene.guidance.graph.requires(doc_id))
    print(f"  {doc_id:22s} needs {reqs if reqs else 'nothing'}")

findings = validate_scene(scene)
print(f"\nvalidation findings: {len(findings)}")

out = serialize_scene(scene)
print(f"canonical scene file is {len(out)} bytes; first lines:")
print("\n".join(out.decode().splitlines()[:8]))
