from __future__ import annotations

import itertools
import random

import pytest

from mediascene.documents import MediaKind, MultimediaDocument
from mediascene.errors import (
    DanglingReferenceError,
    LockedContentError,
    MisconfiguredGuidanceError,
)
from mediascene.guidance import (
    GuidanceGraph,
    GuidanceMode,
    available_documents,
    new_session,
    progress,
    record_view,
    simulate_exhaustion,
    validate_guidance_graph,
)
from mediascene.sceneconfig import GuidanceSpec, Scene, import_legacy_episode

from conftest import fixture_bytes


def _docs(*ids):
    return tuple(
        MultimediaDocument(id=i, kind=MediaKind.IMAGE, source=f"content:{i}") for i in ids
    )


def _scene(ids, mode=GuidanceMode.FREE, prereqs=None, order=()):
    return Scene(
        scene_id="t",
        title="t",
        documents=_docs(*ids),
        guidance=GuidanceSpec(mode, GuidanceGraph(prereqs or {}, tuple(order))),
    )


def brute_force_available(viewed: frozenset[str], scene: Scene) -> frozenset[str]:
    # Independent statement of the conditional rule, evaluated per document
    # with an explicit all() loop.
    out = set()
    prereqs = scene.guidance.graph.prerequisites
    for doc_id in scene.document_ids:
        if doc_id in viewed:
            out.add(doc_id)
        elif all(r in viewed for r in prereqs.get(doc_id, frozenset())):
            out.add(doc_id)
    return frozenset(out)


# ---------------------------------------------------------------------------
# Session creation
# ---------------------------------------------------------------------------


def test_new_session_free_empty_viewed():
    state = new_session(_scene(["a", "b"]), GuidanceMode.FREE)
    assert state.viewed == frozenset()
    assert state.scene_ref == "t"


def test_new_session_sequential_without_order_rejected():
    with pytest.raises(MisconfiguredGuidanceError):
        new_session(_scene(["a", "b"]), GuidanceMode.SEQUENTIAL)


def test_new_session_conditional_on_imported_episodes():
    scene = import_legacy_episode(fixture_bytes("legacy_two_episodes.json"))
    state = new_session(scene, GuidanceMode.CONDITIONAL)
    assert state.viewed == frozenset()
    avail = available_documents(state, scene)
    assert avail == {"episode-1-content-1", "episode-1-content-2"}


# ---------------------------------------------------------------------------
# Availability
# ---------------------------------------------------------------------------


def test_available_free_is_everything():
    scene = _scene(["a", "b", "c"])
    state = new_session(scene, GuidanceMode.FREE)
    assert available_documents(state, scene) == {"a", "b", "c"}


def test_available_conditional_enumerated_against_rule():
    scene = _scene(
        ["A", "B", "C"],
        GuidanceMode.CONDITIONAL,
        prereqs={"C": frozenset({"A", "B"})},
    )
    for r in range(4):
        for combo in itertools.combinations(["A", "B", "C"], r):
            viewed = frozenset(combo)
            state = new_session(scene, GuidanceMode.CONDITIONAL)
            object.__setattr__(state, "viewed", viewed)
            assert available_documents(state, scene) == brute_force_available(viewed, scene)
    state = new_session(scene, GuidanceMode.CONDITIONAL)
    assert available_documents(state, scene) == {"A", "B"}
    state = record_view(state, "A", scene)
    assert available_documents(state, scene) == {"A", "B"}
    state = record_view(state, "B", scene)
    assert available_documents(state, scene) == {"A", "B", "C"}


def test_available_sequential_first_only():
    scene = _scene(["d1", "d2", "d3"], GuidanceMode.SEQUENTIAL, order=["d1", "d2", "d3"])
    state = new_session(scene, GuidanceMode.SEQUENTIAL)
    assert available_documents(state, scene) == {"d1"}


def test_available_sequential_finished_tour():
    scene = _scene(["d1", "d2"], GuidanceMode.SEQUENTIAL, order=["d1", "d2"])
    state = new_session(scene, GuidanceMode.SEQUENTIAL)
    state = record_view(state, "d1", scene)
    state = record_view(state, "d2", scene)
    assert available_documents(state, scene) == {"d1", "d2"}


# ---------------------------------------------------------------------------
# Recording views
# ---------------------------------------------------------------------------


def test_record_view_sequential_out_of_order_rejected():
    scene = _scene(["d1", "d2"], GuidanceMode.SEQUENTIAL, order=["d1", "d2"])
    state = new_session(scene, GuidanceMode.SEQUENTIAL)
    with pytest.raises(LockedContentError):
        record_view(state, "d2", scene)


def test_record_view_conditional_chain():
    scene = _scene(
        ["A", "B", "C"],
        GuidanceMode.CONDITIONAL,
        prereqs={"C": frozenset({"A", "B"})},
    )
    state = new_session(scene, GuidanceMode.CONDITIONAL)
    for doc in ("A", "B", "C"):
        assert doc in available_documents(state, scene)
        state = record_view(state, doc, scene)
    assert state.viewed == {"A", "B", "C"}


def test_record_view_idempotent():
    scene = _scene(["a", "b"])
    state = new_session(scene, GuidanceMode.FREE)
    state = record_view(state, "a", scene)
    again = record_view(state, "a", scene)
    assert again == state


def test_record_view_unknown_document():
    scene = _scene(["a"])
    state = new_session(scene, GuidanceMode.FREE)
    with pytest.raises(DanglingReferenceError):
        record_view(state, "ghost", scene)


def test_record_view_never_succeeds_outside_available():
    rng = random.Random(7)
    ids = [f"d{i}" for i in range(6)]
    prereqs = {"d3": frozenset({"d0", "d1"}), "d4": frozenset({"d3"}), "d5": frozenset({"d4"})}
    scene = _scene(ids, GuidanceMode.CONDITIONAL, prereqs=prereqs)
    state = new_session(scene, GuidanceMode.CONDITIONAL)
    for _ in range(200):
        doc = rng.choice(ids)
        avail = available_documents(state, scene)
        try:
            state = record_view(state, doc, scene)
            assert doc in avail
        except LockedContentError:
            assert doc not in avail


def test_viewed_monotone_in_conditional_mode():
    rng = random.Random(11)
    prereqs = {"c": frozenset({"a"}), "d": frozenset({"b", "c"})}
    scene = _scene(["a", "b", "c", "d"], GuidanceMode.CONDITIONAL, prereqs=prereqs)
    state = new_session(scene, GuidanceMode.CONDITIONAL)
    prev_viewed = state.viewed
    prev_avail = available_documents(state, scene)
    while len(state.viewed) < 4:
        doc = rng.choice(sorted(available_documents(state, scene)))
        state = record_view(state, doc, scene)
        avail = available_documents(state, scene)
        assert prev_viewed <= state.viewed
        assert prev_avail <= avail
        prev_viewed, prev_avail = state.viewed, avail


def test_sequential_viewed_is_prefix():
    order = ["d1", "d2", "d3", "d4"]
    scene = _scene(order, GuidanceMode.SEQUENTIAL, order=order)
    state = new_session(scene, GuidanceMode.SEQUENTIAL)
    for k, doc in enumerate(order, start=1):
        state = record_view(state, doc, scene)
        assert state.viewed == frozenset(order[:k])
        # Re-viewing an earlier stop keeps the prefix.
        state = record_view(state, order[0], scene)
        assert state.viewed == frozenset(order[:k])


# ---------------------------------------------------------------------------
# Graph validation
# ---------------------------------------------------------------------------


def test_validate_two_cycle_reported_and_unreachable():
    scene = _scene(
        ["A", "B"],
        GuidanceMode.CONDITIONAL,
        prereqs={"A": frozenset({"B"}), "B": frozenset({"A"})},
    )
    findings = validate_guidance_graph(scene)
    codes = sorted(f.code for f in findings)
    assert "cycle" in codes
    unreachable = {f.subject for f in findings if f.code == "unreachable"}
    assert unreachable == {"A", "B"}


def test_validate_chain_is_clean():
    scene = _scene(
        ["A", "B", "C"],
        GuidanceMode.CONDITIONAL,
        prereqs={"B": frozenset({"A"}), "C": frozenset({"B"})},
    )
    assert validate_guidance_graph(scene) == []
    assert simulate_exhaustion(scene) == {"A", "B", "C"}


def test_validate_dangling_prerequisite():
    scene = _scene(["D"], GuidanceMode.CONDITIONAL, prereqs={"D": frozenset({"X"})})
    findings = validate_guidance_graph(scene)
    assert any(f.code == "dangling_reference" for f in findings)
    assert any(f.code == "unreachable" and f.subject == "D" for f in findings)


def test_validate_order_duplicates_and_omissions():
    scene = _scene(["a", "b", "c"], GuidanceMode.SEQUENTIAL, order=["a", "a", "b"])
    findings = validate_guidance_graph(scene)
    codes = {f.code for f in findings}
    assert "order_duplicate" in codes
    assert any(f.code == "order_omission" and f.subject == "c" for f in findings)


def test_validate_order_unknown_entry():
    scene = _scene(["a"], GuidanceMode.SEQUENTIAL, order=["a", "ghost"])
    findings = validate_guidance_graph(scene)
    assert any(f.code == "dangling_reference" and f.subject == "ghost" for f in findings)


# ---------------------------------------------------------------------------
# Progress
# ---------------------------------------------------------------------------


def test_progress_fractions():
    scene = _scene(["a", "b", "c", "d"])
    state = new_session(scene, GuidanceMode.FREE)
    assert progress(state, scene) == 0.0
    state = record_view(state, "a", scene)
    state = record_view(state, "b", scene)
    assert progress(state, scene) == 0.5
    state = record_view(state, "c", scene)
    state = record_view(state, "d", scene)
    assert progress(state, scene) == 1.0


def test_progress_empty_scene_is_complete():
    scene = _scene([])
    state = new_session(scene, GuidanceMode.FREE)
    assert progress(state, scene) == 1.0


def test_progress_sequential_counts_ordered_docs():
    scene = _scene(["a", "b", "extra"], GuidanceMode.SEQUENTIAL, order=["a", "b"])
    state = new_session(scene, GuidanceMode.SEQUENTIAL)
    state = record_view(state, "a", scene)
    assert progress(state, scene) == 0.5
