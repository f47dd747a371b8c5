"""The four ways a document is placed into the 3D scene.

* geo pin: a camera-facing marker with a thumbnail; opening it shows the
  document in a 2D panel without moving the camera. Pins render at constant
  on-screen size so an overview of the whole scene survives zooming out.
* geo web board: the document itself rendered in-world at an anchor, sized
  in world meters, always re-faced toward the camera.
* extended document: a media overlay bound to a camera pose; engaging it
  flies the camera there and superimposes the media with adjustable opacity.
* slideshow: an ordered media sequence projected on a fixed plane, laid flat
  on the ground or standing upright.

Entities are immutable; every state change returns a new value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Any, Collection, Iterable

from .documents import MediaKind, MultimediaDocument, Thumbnail
from .errors import (
    DanglingReferenceError,
    EmptySlideshowError,
    InvalidParameterError,
    InvalidSizeError,
    LockedContentError,
    UnsupportedMediaError,
)
from .geo import (
    DEFAULT_EASING,
    DEFAULT_MIN_DURATION_S,
    DEFAULT_SPEED_MPS,
    CameraPose,
    Easing,
    TravelPlan,
    Vec3,
    travel_plan,
)

# Media an extended document can superimpose on the 3D view.
OVERLAY_KINDS = frozenset({MediaKind.IMAGE, MediaKind.ANIMATED_IMAGE, MediaKind.VIDEO})


class ScreenAnchor(Enum):
    """Dock side for the 2D panel a pin opens."""

    LEFT = "left"
    RIGHT = "right"
    BOTTOM = "bottom"
    CENTER = "center"


class SlideshowOrientation(Enum):
    HORIZONTAL = "horizontal"
    VERTICAL = "vertical"


@dataclass(frozen=True)
class PlaneSize:
    width_m: float
    height_m: float

    def __post_init__(self):
        for name, v in (("width_m", self.width_m), ("height_m", self.height_m)):
            if not isinstance(v, (int, float)) or isinstance(v, bool) or not math.isfinite(v) or v <= 0.0:
                raise InvalidSizeError(f"{name} must be a positive number, got {v!r}")


@dataclass(frozen=True)
class GeoPin:
    entity_id: str
    document_id: str
    anchor: Vec3
    thumbnail: Thumbnail
    activated: bool = True
    panel_anchor: ScreenAnchor = ScreenAnchor.LEFT
    extensions: dict[str, Any] = field(default_factory=dict)


@dataclass(frozen=True)
class GeoWebBoard:
    entity_id: str
    document_id: str
    anchor: Vec3
    size: PlaneSize
    extensions: dict[str, Any] = field(default_factory=dict)


@dataclass(frozen=True)
class ExtendedDocumentEntity:
    entity_id: str
    document_id: str
    camera: CameraPose
    overlay_opacity: float = 1.0
    extensions: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        v = self.overlay_opacity
        if not isinstance(v, (int, float)) or isinstance(v, bool) or not math.isfinite(v):
            raise InvalidParameterError(f"overlay_opacity must be finite, got {v!r}")
        if not 0.0 <= v <= 1.0:
            raise InvalidParameterError(f"overlay_opacity {v!r} outside [0, 1]")


@dataclass(frozen=True)
class Slideshow:
    entity_id: str
    center: Vec3
    size: PlaneSize
    orientation: SlideshowOrientation
    heading_deg: float = 0.0
    media: tuple[str, ...] = ()
    current_index: int = 0
    extensions: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "media", tuple(self.media))
        if not math.isfinite(self.heading_deg):
            raise InvalidParameterError(f"heading_deg must be finite, got {self.heading_deg!r}")
        bound = max(len(self.media), 1)
        if not 0 <= self.current_index < bound:
            raise InvalidParameterError(
                f"current_index {self.current_index} outside [0, {bound})"
            )


@dataclass(frozen=True)
class PanelOpenResult:
    document_id: str
    panel_anchor: ScreenAnchor


@dataclass(frozen=True)
class ViewPlan:
    """Camera travel plus the overlay to show once the move completes."""

    travel: TravelPlan
    overlay_document_id: str
    overlay_opacity: float


def apply_availability(pins: Iterable[GeoPin], available: Collection[str]) -> list[GeoPin]:
    """Set each pin's activation from availability; locked pins stay listed."""
    return [replace(p, activated=p.document_id in available) for p in pins]


def open_pin(pin: GeoPin, known_documents: Collection[str] | None = None) -> PanelOpenResult:
    """Resolve a pin click into a 2D panel descriptor; the camera stays put."""
    if known_documents is not None and pin.document_id not in known_documents:
        raise DanglingReferenceError(
            f"pin {pin.entity_id!r} references unknown document {pin.document_id!r}"
        )
    if not pin.activated:
        raise LockedContentError(
            f"document {pin.document_id!r} is locked", pin.document_id
        )
    return PanelOpenResult(pin.document_id, pin.panel_anchor)


def slideshow_quad(s: Slideshow) -> tuple[Vec3, Vec3, Vec3, Vec3]:
    """Corners of the slideshow plane, counterclockwise seen from its normal.

    Heading 0 aligns the width axis east; positive headings rotate
    counterclockwise seen from above. Horizontal planes face up; vertical
    planes face north at heading 0.
    """
    h = math.radians(s.heading_deg)
    c, sn = math.cos(h), math.sin(h)
    width_axis = Vec3(c, sn, 0.0)
    if s.orientation is SlideshowOrientation.HORIZONTAL:
        a1 = width_axis.scaled(s.size.width_m / 2.0)
        a2 = Vec3(-sn, c, 0.0).scaled(s.size.height_m / 2.0)
    else:
        a1 = Vec3(0.0, 0.0, 1.0).scaled(s.size.height_m / 2.0)
        a2 = width_axis.scaled(s.size.width_m / 2.0)
    return (
        s.center - a1 - a2,
        s.center + a1 - a2,
        s.center + a1 + a2,
        s.center - a1 + a2,
    )


def slideshow_step(s: Slideshow, delta: int) -> Slideshow:
    """Advance (or rewind) the current slide, wrapping around the ends."""
    if not s.media:
        raise EmptySlideshowError(f"slideshow {s.entity_id!r} has no media")
    return replace(s, current_index=(s.current_index + delta) % len(s.media))


def set_overlay_opacity(e: ExtendedDocumentEntity, alpha: float) -> ExtendedDocumentEntity:
    """Clamp ``alpha`` into [0, 1] and return the updated entity."""
    if not isinstance(alpha, (int, float)) or isinstance(alpha, bool) or not math.isfinite(alpha):
        raise InvalidParameterError(f"opacity must be finite, got {alpha!r}")
    return replace(e, overlay_opacity=min(1.0, max(0.0, float(alpha))))


def build_view_plan(
    entity: ExtendedDocumentEntity,
    current: CameraPose,
    document: MultimediaDocument,
    available: Collection[str] | None = None,
    speed_mps: float = DEFAULT_SPEED_MPS,
    min_duration_s: float = DEFAULT_MIN_DURATION_S,
    easing: Easing = DEFAULT_EASING,
) -> ViewPlan:
    """Plan the fly-to-and-overlay move for an extended document.

    Passing the session's ``available`` set enforces guidance here: no plan
    is ever produced for a document the user cannot consume yet.
    """
    if document.id != entity.document_id:
        raise InvalidParameterError(
            f"document {document.id!r} does not back entity {entity.entity_id!r}"
        )
    if available is not None and entity.document_id not in available:
        raise LockedContentError(
            f"document {entity.document_id!r} is locked", entity.document_id
        )
    if document.kind not in OVERLAY_KINDS:
        raise UnsupportedMediaError(
            f"{document.kind.value} media cannot be overlaid on the 3D view"
        )
    travel = travel_plan(current, entity.camera, speed_mps, min_duration_s, easing)
    return ViewPlan(travel, entity.document_id, entity.overlay_opacity)
