from __future__ import annotations

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mediascene.documents import MediaKind, MultimediaDocument, Thumbnail
from mediascene.errors import (
    DanglingReferenceError,
    EmptySlideshowError,
    InvalidParameterError,
    InvalidSizeError,
    LockedContentError,
    UnsupportedMediaError,
)
from mediascene.geo import CameraPose, Quaternion, Vec3
from mediascene.modalities import (
    ExtendedDocumentEntity,
    GeoPin,
    PlaneSize,
    ScreenAnchor,
    Slideshow,
    SlideshowOrientation,
    apply_availability,
    build_view_plan,
    open_pin,
    set_overlay_opacity,
    slideshow_quad,
    slideshow_step,
)


def _thumb(doc_id):
    return Thumbnail(doc_id, f"./thumbs/{doc_id}.jpg")


def _pin(doc_id, activated=True):
    return GeoPin(f"{doc_id}-pin", doc_id, Vec3(0, 0, 0), _thumb(doc_id), activated=activated)


def _doc(doc_id, kind=MediaKind.IMAGE):
    return MultimediaDocument(id=doc_id, kind=kind, source=f"content:{doc_id}")


def _ext(doc_id, opacity=1.0):
    camera = CameraPose(Vec3(5, 5, 40), Quaternion.identity())
    return ExtendedDocumentEntity(f"{doc_id}-ext", doc_id, camera, overlay_opacity=opacity)


# ---------------------------------------------------------------------------
# Pins
# ---------------------------------------------------------------------------


def test_apply_availability_all_and_none():
    pins = [_pin("a", False), _pin("b", False), _pin("c", True)]
    allowed = apply_availability(pins, {"a", "b", "c"})
    assert all(p.activated for p in allowed)
    locked = apply_availability(pins, set())
    assert len(locked) == 3
    assert not any(p.activated for p in locked)
    assert [p.entity_id for p in locked] == [p.entity_id for p in pins]


def test_apply_availability_partial():
    pins = [_pin("a"), _pin("b"), _pin("c")]
    got = apply_availability(pins, {"a", "c"})
    assert [p.activated for p in got] == [True, False, True]
    assert got[1].anchor == pins[1].anchor
    assert got[1].thumbnail == pins[1].thumbnail


def test_open_pin_activated_returns_panel():
    result = open_pin(_pin("a"))
    assert result.document_id == "a"
    assert result.panel_anchor is ScreenAnchor.LEFT


def test_open_pin_locked_raises_with_document_id():
    with pytest.raises(LockedContentError) as exc:
        open_pin(_pin("a", activated=False))
    assert exc.value.document_id == "a"


def test_open_pin_dangling_reference():
    with pytest.raises(DanglingReferenceError):
        open_pin(_pin("ghost"), known_documents={"a", "b"})


# ---------------------------------------------------------------------------
# Slideshow geometry
# ---------------------------------------------------------------------------


def _show(center=Vec3(0, 0, 0), w=10.0, h=10.0, orientation=SlideshowOrientation.HORIZONTAL, heading=0.0, media=("m1", "m2", "m3"), index=0):
    return Slideshow("show", center, PlaneSize(w, h), orientation, heading, media, index)


def _corner_set(corners):
    return {(round(c.x, 9), round(c.y, 9), round(c.z, 9)) for c in corners}


def test_quad_horizontal_square():
    corners = slideshow_quad(_show())
    assert _corner_set(corners) == {(-5, -5, 0), (5, -5, 0), (5, 5, 0), (-5, 5, 0)}
    assert all(c.z == 0 for c in corners)


def test_quad_vertical_example():
    corners = slideshow_quad(
        _show(center=Vec3(0, 0, 5), w=4.0, h=2.0, orientation=SlideshowOrientation.VERTICAL)
    )
    assert _corner_set(corners) == {(-2, 0, 4), (2, 0, 4), (2, 0, 6), (-2, 0, 6)}
    normal = (corners[1] - corners[0]).cross(corners[3] - corners[0]).normalized()
    assert abs(normal.x) < 1e-9 and abs(normal.y - 1.0) < 1e-9 and abs(normal.z) < 1e-9


def test_quad_heading_rotates_vertical_normal_ccw():
    corners = slideshow_quad(
        _show(orientation=SlideshowOrientation.VERTICAL, heading=90.0)
    )
    normal = (corners[1] - corners[0]).cross(corners[3] - corners[0]).normalized()
    assert abs(normal.x + 1.0) < 1e-9 and abs(normal.y) < 1e-9


def test_quad_horizontal_normal_is_up_regardless_of_heading():
    corners = slideshow_quad(_show(heading=37.5))
    normal = (corners[1] - corners[0]).cross(corners[3] - corners[0]).normalized()
    assert abs(normal.z - 1.0) < 1e-9


@given(
    cx=st.floats(-1e4, 1e4),
    cy=st.floats(-1e4, 1e4),
    cz=st.floats(-100.0, 500.0),
    w=st.floats(0.1, 500.0),
    h=st.floats(0.1, 500.0),
    heading=st.floats(-360.0, 720.0),
    vertical=st.booleans(),
)
@settings(max_examples=150, deadline=None)
def test_quad_centroid_and_edges(cx, cy, cz, w, h, heading, vertical):
    orientation = SlideshowOrientation.VERTICAL if vertical else SlideshowOrientation.HORIZONTAL
    s = _show(center=Vec3(cx, cy, cz), w=w, h=h, orientation=orientation, heading=heading)
    corners = slideshow_quad(s)
    centroid = Vec3(
        sum(c.x for c in corners) / 4.0,
        sum(c.y for c in corners) / 4.0,
        sum(c.z for c in corners) / 4.0,
    )
    assert (centroid - s.center).norm() < 1e-6
    e1 = (corners[1] - corners[0]).norm()
    e2 = (corners[3] - corners[0]).norm()
    assert {round(e1, 6), round(e2, 6)} == {round(w, 6), round(h, 6)} or (
        abs(e1 - e2) < 1e-9 and abs(e1 - w) < 1e-6 and abs(h - w) < 1e-6
    )


def test_quad_translation_invariance():
    base = slideshow_quad(_show())
    moved = slideshow_quad(_show(center=Vec3(7.0, -3.0, 2.0)))
    for b, m in zip(base, moved):
        assert (m - b - Vec3(7.0, -3.0, 2.0)).norm() < 1e-9


def test_plane_size_must_be_positive():
    with pytest.raises(InvalidSizeError):
        PlaneSize(-3.0, 1.0)
    with pytest.raises(InvalidSizeError):
        PlaneSize(1.0, 0.0)


# ---------------------------------------------------------------------------
# Slideshow stepping
# ---------------------------------------------------------------------------


def test_step_wraps_forward():
    s = _show(index=2)
    assert slideshow_step(s, 1).current_index == 0


def test_step_zero_is_identity():
    s = _show(index=1)
    assert slideshow_step(s, 0) == s


def test_step_singleton():
    s = _show(media=("only",), index=0)
    for delta in (-5, -1, 0, 1, 7):
        assert slideshow_step(s, delta).current_index == 0


def test_step_composition_law():
    s = _show(index=1)
    for a in (-4, -1, 0, 2, 9):
        for b in (-3, 0, 1, 5):
            assert slideshow_step(slideshow_step(s, a), b) == slideshow_step(s, a + b)
    assert slideshow_step(s, len(s.media)) == s


def test_step_empty_media_raises():
    s = _show(media=(), index=0)
    with pytest.raises(EmptySlideshowError):
        slideshow_step(s, 1)


def test_slideshow_index_bounds_enforced():
    with pytest.raises(InvalidParameterError):
        _show(media=("a", "b"), index=2)


# ---------------------------------------------------------------------------
# Extended documents
# ---------------------------------------------------------------------------


def test_view_plan_degenerate_travel():
    e = _ext("a")
    plan = build_view_plan(e, e.camera, _doc("a"), min_duration_s=1.5)
    assert plan.travel.duration_s == 1.5
    assert plan.travel.sample(0.5) == e.camera
    assert plan.overlay_document_id == "a"


def test_view_plan_default_opacity():
    e = _ext("a")
    start = CameraPose(Vec3(0, 0, 0), Quaternion.identity())
    plan = build_view_plan(e, start, _doc("a", MediaKind.IMAGE))
    assert plan.overlay_opacity == 1.0


def test_view_plan_rejects_web_page():
    e = _ext("a")
    start = CameraPose(Vec3(0, 0, 0), Quaternion.identity())
    with pytest.raises(UnsupportedMediaError):
        build_view_plan(e, start, _doc("a", MediaKind.WEB_PAGE))


@pytest.mark.parametrize("kind", [MediaKind.TEXT, MediaKind.PDF, MediaKind.VIDEO_360])
def test_view_plan_rejects_non_overlay_kinds(kind):
    e = _ext("a")
    start = CameraPose(Vec3(0, 0, 0), Quaternion.identity())
    with pytest.raises(UnsupportedMediaError):
        build_view_plan(e, start, _doc("a", kind))


def test_view_plan_accepts_video():
    e = _ext("a")
    start = CameraPose(Vec3(0, 0, 0), Quaternion.identity())
    plan = build_view_plan(e, start, _doc("a", MediaKind.VIDEO))
    assert plan.travel.sample(1.0) == e.camera


def test_view_plan_blocked_for_unavailable_document():
    e = _ext("a")
    start = CameraPose(Vec3(0, 0, 0), Quaternion.identity())
    with pytest.raises(LockedContentError):
        build_view_plan(e, start, _doc("a"), available={"b", "c"})


def test_view_plan_document_mismatch():
    e = _ext("a")
    start = CameraPose(Vec3(0, 0, 0), Quaternion.identity())
    with pytest.raises(InvalidParameterError):
        build_view_plan(e, start, _doc("other"))


def test_set_overlay_opacity_clamps():
    e = _ext("a", opacity=0.3)
    assert set_overlay_opacity(e, 0.5).overlay_opacity == 0.5
    assert set_overlay_opacity(e, 1.7).overlay_opacity == 1.0
    assert set_overlay_opacity(e, -3.0).overlay_opacity == 0.0


def test_set_overlay_opacity_rejects_non_finite():
    e = _ext("a")
    with pytest.raises(InvalidParameterError):
        set_overlay_opacity(e, math.nan)


def test_extended_entity_opacity_range_enforced():
    with pytest.raises(InvalidParameterError):
        _ext("a", opacity=1.5)
