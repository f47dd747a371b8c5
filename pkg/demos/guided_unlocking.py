#!/usr/bin/env python3
"""The three guidance modes over one small document collection.

Run from the repository root:

    python3 demos/guided_unlocking.py
"""

from mediascene import (
    GuidanceGraph,
    GuidanceMode,
    MediaKind,
    MultimediaDocument,
    Scene,
    available_documents,
    new_session,
    progress,
    record_view,
)
from mediascene.sceneconfig import GuidanceSpec

docs = tuple(
    MultimediaDocument(id=i, kind=MediaKind.IMAGE, source=f"content:{i}")
    for i in ("intro", "factory", "river", "finale")
)

# "finale" needs both themed documents; they in turn need the intro.
graph = GuidanceGraph(
    prerequisites={
        "factory": frozenset({"intro"}),
        "river": frozenset({"intro"}),
        "finale": frozenset({"factory", "river"}),
    },
    order=("intro", "factory", "river", "finale"),
)


def show(label, state, scene):
    avail = sorted(available_documents(state, scene))
    print(f"  {label:28s} viewed={sorted(state.viewed)!s:38s} available={avail}")


for mode in (GuidanceMode.FREE, GuidanceMode.CONDITIONAL, GuidanceMode.SEQUENTIAL):
    scene = Scene(
        scene_id="demo",
        title="Guidance demo",
        documents=docs,
        guidance=GuidanceSpec(mode, graph),
    )
    print(f"\n== {mode.value} access ==")
    state = new_session(scene, mode)
    show("fresh session", state, scene)
    for doc in ("intro", "factory", "river", "finale"):
        state = record_view(state, doc, scene)
        show(f"after viewing {doc!r}", state, scene)
    print(f"  progress: {progress(state, scene):.0%}")
