"""Scene description files: parsing, validation, canonical serialization.

The scene file is UTF-8 JSON, schema version "1". Unknown fields anywhere
are preserved in per-object ``extensions`` bags and written back on
serialization, so files from newer writers survive a round trip. Canonical
output uses sorted keys, two-space indent, LF, and a trailing newline,
which keeps golden-file comparisons bit-exact.

A separate importer reads the older per-episode pin format (numeric-string
coordinates, imgUnlock/imgLock thumbnails, lock flags) and lifts it into a
conditional-access scene where each episode unlocks the next.
"""

from __future__ import annotations

import json
import math
import os.path
import re
from dataclasses import dataclass, field
from datetime import date
from enum import Enum
from typing import Any
from urllib.parse import urlsplit

from .documents import MediaKind, MultimediaDocument, Thumbnail
from .errors import (
    FieldPathError,
    InvalidParameterError,
    MediasceneError,
    SceneParseError,
    SceneSyntaxError,
)
from .geo import CameraPose, GeodeticCoord, Quaternion, Vec3
from .guidance import GuidanceGraph, GuidanceMode, validate_guidance_graph
from .modalities import (
    ExtendedDocumentEntity,
    GeoPin,
    GeoWebBoard,
    PlaneSize,
    ScreenAnchor,
    Slideshow,
    SlideshowOrientation,
)
from .validation import Finding

SCHEMA_VERSION = "1"


class GeoserviceKind(Enum):
    WMS = "wms"
    WFS = "wfs"


@dataclass(frozen=True)
class GeoserviceLayer:
    kind: GeoserviceKind
    base_url: str
    layer_name: str
    default_style: str | None = None
    extensions: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if not self.base_url:
            raise InvalidParameterError("geoservice layer base_url must be non-empty")


@dataclass(frozen=True)
class GuidanceSpec:
    mode: GuidanceMode = GuidanceMode.FREE
    graph: GuidanceGraph = field(default_factory=GuidanceGraph)
    extensions: dict[str, Any] = field(default_factory=dict)


@dataclass(frozen=True)
class Scene:
    scene_id: str
    title: str = ""
    crs_note: str = ""
    origin: GeodeticCoord | None = None
    documents: tuple[MultimediaDocument, ...] = ()
    thumbnails: tuple[Thumbnail, ...] = ()
    pins: tuple[GeoPin, ...] = ()
    web_boards: tuple[GeoWebBoard, ...] = ()
    extended_documents: tuple[ExtendedDocumentEntity, ...] = ()
    slideshows: tuple[Slideshow, ...] = ()
    guidance: GuidanceSpec = field(default_factory=GuidanceSpec)
    tileset_refs: tuple[str, ...] = ()
    layer_refs: tuple[GeoserviceLayer, ...] = ()
    schema_version: str = SCHEMA_VERSION
    extensions: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if not self.scene_id:
            raise InvalidParameterError("scene_id must be non-empty")
        for name in (
            "documents",
            "thumbnails",
            "pins",
            "web_boards",
            "extended_documents",
            "slideshows",
            "tileset_refs",
            "layer_refs",
        ):
            object.__setattr__(self, name, tuple(getattr(self, name)))

    @property
    def document_ids(self) -> frozenset[str]:
        return frozenset(d.id for d in self.documents)

    def document(self, document_id: str) -> MultimediaDocument | None:
        for d in self.documents:
            if d.id == document_id:
                return d
        return None


# ---------------------------------------------------------------------------
# Extraction helpers. Every failure raises FieldPathError with the JSON path
# of the offending value, so arbitrary input can never crash the parser.
# ---------------------------------------------------------------------------


def _type_name(value: Any) -> str:
    return {
        dict: "object",
        list: "array",
        str: "string",
        bool: "boolean",
        type(None): "null",
    }.get(type(value), "number" if isinstance(value, (int, float)) else type(value).__name__)


def _expect_object(value: Any, path: str) -> dict:
    if not isinstance(value, dict):
        raise FieldPathError(path, f"expected object, got {_type_name(value)}")
    return value


def _expect_array(value: Any, path: str) -> list:
    if not isinstance(value, list):
        raise FieldPathError(path, f"expected array, got {_type_name(value)}")
    return value


def _required(obj: dict, key: str, path: str) -> Any:
    if key not in obj:
        raise FieldPathError(f"{path}.{key}", "required field missing")
    return obj[key]


def _string(value: Any, path: str, allow_empty: bool = True) -> str:
    if not isinstance(value, str):
        raise FieldPathError(path, f"expected string, got {_type_name(value)}")
    if not allow_empty and not value:
        raise FieldPathError(path, "must be non-empty")
    return value


def _boolean(value: Any, path: str) -> bool:
    if not isinstance(value, bool):
        raise FieldPathError(path, f"expected boolean, got {_type_name(value)}")
    return value


def _number(value: Any, path: str) -> float:
    # Numeric strings are accepted (legacy files quote their coordinates);
    # output always re-emits plain numbers.
    if isinstance(value, str):
        try:
            value = float(value)
        except ValueError:
            raise FieldPathError(path, f"not a numeric value: {value!r}") from None
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise FieldPathError(path, f"expected number, got {_type_name(value)}")
    if not math.isfinite(value):
        raise FieldPathError(path, f"number must be finite, got {value!r}")
    return value


def _integer(value: Any, path: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise FieldPathError(path, f"expected integer, got {_type_name(value)}")
    return value


def _date(value: Any, path: str) -> date:
    raw = _string(value, path)
    try:
        return date.fromisoformat(raw)
    except ValueError:
        raise FieldPathError(path, f"not an ISO date (YYYY-MM-DD): {raw!r}") from None


def _enum(value: Any, path: str, enum_cls: type[Enum]) -> Enum:
    raw = _string(value, path)
    try:
        return enum_cls(raw)
    except ValueError:
        allowed = ", ".join(e.value for e in enum_cls)
        raise FieldPathError(path, f"{raw!r} is not one of: {allowed}") from None


def _string_array(value: Any, path: str) -> tuple[str, ...]:
    items = _expect_array(value, path)
    return tuple(_string(v, f"{path}[{i}]") for i, v in enumerate(items))


def _extras(obj: dict, known: tuple[str, ...]) -> dict[str, Any]:
    return {k: v for k, v in obj.items() if k not in known}


def _build(path: str, fn, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except SceneParseError:
        raise
    except MediasceneError as exc:
        raise FieldPathError(path, exc.message) from exc


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------


def _load_json(data: bytes | str) -> Any:
    if isinstance(data, (bytes, bytearray)):
        try:
            text = bytes(data).decode("utf-8")
        except UnicodeDecodeError as exc:
            raise SceneSyntaxError(f"invalid UTF-8: {exc.reason}", exc.start) from None
    else:
        text = data
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        offset = len(text[: exc.pos].encode("utf-8"))
        raise SceneSyntaxError(f"{exc.msg} at line {exc.lineno} column {exc.colno}", offset) from None


def _parse_vec3(value: Any, path: str) -> Vec3:
    obj = _expect_object(value, path)
    return _build(
        path,
        Vec3,
        _number(_required(obj, "x", path), f"{path}.x"),
        _number(_required(obj, "y", path), f"{path}.y"),
        _number(_required(obj, "z", path), f"{path}.z"),
    )


def _parse_quaternion(value: Any, path: str) -> Quaternion:
    obj = _expect_object(value, path)
    return _build(
        path,
        Quaternion,
        _number(_required(obj, "w", path), f"{path}.w"),
        _number(_required(obj, "x", path), f"{path}.x"),
        _number(_required(obj, "y", path), f"{path}.y"),
        _number(_required(obj, "z", path), f"{path}.z"),
    )


def _parse_camera(value: Any, path: str) -> CameraPose:
    obj = _expect_object(value, path)
    return CameraPose(
        _parse_vec3(_required(obj, "position", path), f"{path}.position"),
        _parse_quaternion(_required(obj, "orientation", path), f"{path}.orientation"),
    )


def _parse_origin(value: Any, path: str) -> GeodeticCoord:
    obj = _expect_object(value, path)
    return _build(
        path,
        GeodeticCoord,
        _number(_required(obj, "longitude_deg", path), f"{path}.longitude_deg"),
        _number(_required(obj, "latitude_deg", path), f"{path}.latitude_deg"),
        _number(obj.get("altitude_m", 0.0), f"{path}.altitude_m"),
    )


def _parse_size(value: Any, path: str) -> PlaneSize:
    obj = _expect_object(value, path)
    return _build(
        path,
        PlaneSize,
        _number(_required(obj, "width_m", path), f"{path}.width_m"),
        _number(_required(obj, "height_m", path), f"{path}.height_m"),
    )


_DOCUMENT_KEYS = (
    "id",
    "kind",
    "source",
    "title",
    "description",
    "provenance_source",
    "publication_date",
    "reference_date",
    "tags",
)


def _parse_document(value: Any, path: str) -> MultimediaDocument:
    obj = _expect_object(value, path)
    pub = obj.get("publication_date")
    ref = obj.get("reference_date")
    return _build(
        path,
        MultimediaDocument,
        _string(_required(obj, "id", path), f"{path}.id", allow_empty=False),
        _enum(_required(obj, "kind", path), f"{path}.kind", MediaKind),
        _string(_required(obj, "source", path), f"{path}.source", allow_empty=False),
        title=_string(obj.get("title", ""), f"{path}.title"),
        description=_string(obj.get("description", ""), f"{path}.description"),
        provenance_source=_string(obj.get("provenance_source", ""), f"{path}.provenance_source"),
        publication_date=None if pub is None else _date(pub, f"{path}.publication_date"),
        reference_date=None if ref is None else _date(ref, f"{path}.reference_date"),
        tags=frozenset(_string_array(obj.get("tags", []), f"{path}.tags")),
        extensions=_extras(obj, _DOCUMENT_KEYS),
    )


_THUMBNAIL_KEYS = ("document_id", "image_source", "locked_image_source")


def _parse_thumbnail(value: Any, path: str) -> Thumbnail:
    obj = _expect_object(value, path)
    locked = obj.get("locked_image_source")
    return _build(
        path,
        Thumbnail,
        _string(_required(obj, "document_id", path), f"{path}.document_id", allow_empty=False),
        _string(_required(obj, "image_source", path), f"{path}.image_source"),
        locked_image_source=None if locked is None else _string(locked, f"{path}.locked_image_source"),
        extensions=_extras(obj, _THUMBNAIL_KEYS),
    )


_PIN_KEYS = ("entity_id", "document_id", "anchor", "thumbnail", "activated", "panel_anchor")


def _parse_pin(value: Any, path: str) -> GeoPin:
    obj = _expect_object(value, path)
    return _build(
        path,
        GeoPin,
        _string(_required(obj, "entity_id", path), f"{path}.entity_id", allow_empty=False),
        _string(_required(obj, "document_id", path), f"{path}.document_id", allow_empty=False),
        _parse_vec3(_required(obj, "anchor", path), f"{path}.anchor"),
        _parse_thumbnail(_required(obj, "thumbnail", path), f"{path}.thumbnail"),
        activated=_boolean(obj.get("activated", True), f"{path}.activated"),
        panel_anchor=_enum(obj.get("panel_anchor", "left"), f"{path}.panel_anchor", ScreenAnchor),
        extensions=_extras(obj, _PIN_KEYS),
    )


_BOARD_KEYS = ("entity_id", "document_id", "anchor", "size")


def _parse_board(value: Any, path: str) -> GeoWebBoard:
    obj = _expect_object(value, path)
    return _build(
        path,
        GeoWebBoard,
        _string(_required(obj, "entity_id", path), f"{path}.entity_id", allow_empty=False),
        _string(_required(obj, "document_id", path), f"{path}.document_id", allow_empty=False),
        _parse_vec3(_required(obj, "anchor", path), f"{path}.anchor"),
        _parse_size(_required(obj, "size", path), f"{path}.size"),
        extensions=_extras(obj, _BOARD_KEYS),
    )


_EXTENDED_KEYS = ("entity_id", "document_id", "camera", "overlay_opacity")


def _parse_extended(value: Any, path: str) -> ExtendedDocumentEntity:
    obj = _expect_object(value, path)
    return _build(
        path,
        ExtendedDocumentEntity,
        _string(_required(obj, "entity_id", path), f"{path}.entity_id", allow_empty=False),
        _string(_required(obj, "document_id", path), f"{path}.document_id", allow_empty=False),
        _parse_camera(_required(obj, "camera", path), f"{path}.camera"),
        overlay_opacity=_number(obj.get("overlay_opacity", 1.0), f"{path}.overlay_opacity"),
        extensions=_extras(obj, _EXTENDED_KEYS),
    )


_SLIDESHOW_KEYS = (
    "entity_id",
    "center",
    "size",
    "orientation",
    "heading_deg",
    "media",
    "current_index",
)


def _parse_slideshow(value: Any, path: str) -> Slideshow:
    obj = _expect_object(value, path)
    return _build(
        path,
        Slideshow,
        _string(_required(obj, "entity_id", path), f"{path}.entity_id", allow_empty=False),
        _parse_vec3(_required(obj, "center", path), f"{path}.center"),
        _parse_size(_required(obj, "size", path), f"{path}.size"),
        _enum(_required(obj, "orientation", path), f"{path}.orientation", SlideshowOrientation),
        heading_deg=_number(obj.get("heading_deg", 0.0), f"{path}.heading_deg"),
        media=_string_array(obj.get("media", []), f"{path}.media"),
        current_index=_integer(obj.get("current_index", 0), f"{path}.current_index"),
        extensions=_extras(obj, _SLIDESHOW_KEYS),
    )


_LAYER_KEYS = ("kind", "base_url", "layer_name", "default_style")


def _parse_layer(value: Any, path: str) -> GeoserviceLayer:
    obj = _expect_object(value, path)
    style = obj.get("default_style")
    return _build(
        path,
        GeoserviceLayer,
        _enum(_required(obj, "kind", path), f"{path}.kind", GeoserviceKind),
        _string(_required(obj, "base_url", path), f"{path}.base_url", allow_empty=False),
        _string(_required(obj, "layer_name", path), f"{path}.layer_name"),
        default_style=None if style is None else _string(style, f"{path}.default_style"),
        extensions=_extras(obj, _LAYER_KEYS),
    )


_GUIDANCE_KEYS = ("mode", "prerequisites", "order")


def _parse_guidance(value: Any, path: str) -> GuidanceSpec:
    obj = _expect_object(value, path)
    prereq_obj = _expect_object(obj.get("prerequisites", {}), f"{path}.prerequisites")
    prerequisites = {
        doc: frozenset(_string_array(reqs, f"{path}.prerequisites.{doc}"))
        for doc, reqs in prereq_obj.items()
    }
    return GuidanceSpec(
        mode=_enum(obj.get("mode", "free"), f"{path}.mode", GuidanceMode),
        graph=GuidanceGraph(prerequisites, _string_array(obj.get("order", []), f"{path}.order")),
        extensions=_extras(obj, _GUIDANCE_KEYS),
    )


def _parse_entity_array(value: Any, path: str, item_parser) -> tuple:
    items = _expect_array(value, path)
    return tuple(item_parser(v, f"{path}[{i}]") for i, v in enumerate(items))


_SCENE_KEYS = (
    "schema_version",
    "scene_id",
    "title",
    "crs_note",
    "origin",
    "documents",
    "thumbnails",
    "pins",
    "web_boards",
    "extended_documents",
    "slideshows",
    "guidance",
    "tileset_refs",
    "layer_refs",
)


def parse_scene(data: bytes | str) -> Scene:
    """Parse a scene file; raises only :class:`SceneParseError` subclasses."""
    payload = _load_json(data)
    try:
        obj = _expect_object(payload, "$")
        version = _string(obj.get("schema_version", SCHEMA_VERSION), "$.schema_version")
        if version != SCHEMA_VERSION:
            raise FieldPathError("$.schema_version", f"unsupported schema version {version!r}")
        origin_raw = obj.get("origin")
        return _build(
            "$",
            Scene,
            scene_id=_string(_required(obj, "scene_id", "$"), "$.scene_id", allow_empty=False),
            title=_string(_required(obj, "title", "$"), "$.title"),
            crs_note=_string(obj.get("crs_note", ""), "$.crs_note"),
            origin=None if origin_raw is None else _parse_origin(origin_raw, "$.origin"),
            documents=_parse_entity_array(obj.get("documents", []), "$.documents", _parse_document),
            thumbnails=_parse_entity_array(obj.get("thumbnails", []), "$.thumbnails", _parse_thumbnail),
            pins=_parse_entity_array(obj.get("pins", []), "$.pins", _parse_pin),
            web_boards=_parse_entity_array(obj.get("web_boards", []), "$.web_boards", _parse_board),
            extended_documents=_parse_entity_array(
                obj.get("extended_documents", []), "$.extended_documents", _parse_extended
            ),
            slideshows=_parse_entity_array(obj.get("slideshows", []), "$.slideshows", _parse_slideshow),
            guidance=_parse_guidance(obj.get("guidance", {}), "$.guidance"),
            tileset_refs=_string_array(obj.get("tileset_refs", []), "$.tileset_refs"),
            layer_refs=_parse_entity_array(obj.get("layer_refs", []), "$.layer_refs", _parse_layer),
            schema_version=version,
            extensions=_extras(obj, _SCENE_KEYS),
        )
    except SceneParseError:
        raise
    except Exception as exc:  # pragma: no cover - safety net for the fuzz contract
        raise FieldPathError("$", f"unexpected structure: {exc!r}") from exc


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------


def _vec3_json(v: Vec3) -> dict:
    return {"x": v.x, "y": v.y, "z": v.z}


def _document_json(d: MultimediaDocument) -> dict:
    out = {
        "id": d.id,
        "kind": d.kind.value,
        "source": d.source,
        "title": d.title,
        "description": d.description,
        "provenance_source": d.provenance_source,
        "tags": sorted(d.tags),
    }
    if d.publication_date is not None:
        out["publication_date"] = d.publication_date.isoformat()
    if d.reference_date is not None:
        out["reference_date"] = d.reference_date.isoformat()
    out.update(d.extensions)
    return out


def _thumbnail_json(t: Thumbnail) -> dict:
    out = {"document_id": t.document_id, "image_source": t.image_source}
    if t.locked_image_source is not None:
        out["locked_image_source"] = t.locked_image_source
    out.update(t.extensions)
    return out


def _pin_json(p: GeoPin) -> dict:
    out = {
        "entity_id": p.entity_id,
        "document_id": p.document_id,
        "anchor": _vec3_json(p.anchor),
        "thumbnail": _thumbnail_json(p.thumbnail),
        "activated": p.activated,
        "panel_anchor": p.panel_anchor.value,
    }
    out.update(p.extensions)
    return out


def _board_json(b: GeoWebBoard) -> dict:
    out = {
        "entity_id": b.entity_id,
        "document_id": b.document_id,
        "anchor": _vec3_json(b.anchor),
        "size": {"width_m": b.size.width_m, "height_m": b.size.height_m},
    }
    out.update(b.extensions)
    return out


def _extended_json(e: ExtendedDocumentEntity) -> dict:
    q = e.camera.orientation
    out = {
        "entity_id": e.entity_id,
        "document_id": e.document_id,
        "camera": {
            "position": _vec3_json(e.camera.position),
            "orientation": {"w": q.w, "x": q.x, "y": q.y, "z": q.z},
        },
        "overlay_opacity": e.overlay_opacity,
    }
    out.update(e.extensions)
    return out


def _slideshow_json(s: Slideshow) -> dict:
    out = {
        "entity_id": s.entity_id,
        "center": _vec3_json(s.center),
        "size": {"width_m": s.size.width_m, "height_m": s.size.height_m},
        "orientation": s.orientation.value,
        "heading_deg": s.heading_deg,
        "media": list(s.media),
        "current_index": s.current_index,
    }
    out.update(s.extensions)
    return out


def _layer_json(layer: GeoserviceLayer) -> dict:
    out = {
        "kind": layer.kind.value,
        "base_url": layer.base_url,
        "layer_name": layer.layer_name,
    }
    if layer.default_style is not None:
        out["default_style"] = layer.default_style
    out.update(layer.extensions)
    return out


def _guidance_json(g: GuidanceSpec) -> dict:
    out = {
        "mode": g.mode.value,
        "prerequisites": {doc: sorted(reqs) for doc, reqs in g.graph.prerequisites.items()},
        "order": list(g.graph.order),
    }
    out.update(g.extensions)
    return out


def scene_to_jsonable(s: Scene) -> dict:
    out: dict[str, Any] = {
        "schema_version": s.schema_version,
        "scene_id": s.scene_id,
        "title": s.title,
        "crs_note": s.crs_note,
        "documents": [_document_json(d) for d in s.documents],
        "thumbnails": [_thumbnail_json(t) for t in s.thumbnails],
        "pins": [_pin_json(p) for p in s.pins],
        "web_boards": [_board_json(b) for b in s.web_boards],
        "extended_documents": [_extended_json(e) for e in s.extended_documents],
        "slideshows": [_slideshow_json(x) for x in s.slideshows],
        "guidance": _guidance_json(s.guidance),
        "tileset_refs": list(s.tileset_refs),
        "layer_refs": [_layer_json(layer) for layer in s.layer_refs],
    }
    if s.origin is not None:
        out["origin"] = {
            "longitude_deg": s.origin.longitude_deg,
            "latitude_deg": s.origin.latitude_deg,
            "altitude_m": s.origin.altitude_m,
        }
    out.update(s.extensions)
    return out


def serialize_scene(s: Scene) -> bytes:
    """Canonical bytes: sorted keys, 2-space indent, UTF-8, LF, final newline."""
    text = json.dumps(scene_to_jsonable(s), sort_keys=True, indent=2, ensure_ascii=False)
    return (text + "\n").encode("utf-8")


# ---------------------------------------------------------------------------
# Legacy episode import
# ---------------------------------------------------------------------------

_EPISODE_RE = re.compile(r"^episode-(\d+)-data$")
_CONTENT_RE = re.compile(r"^content-(\d+)$")

_EXTENSION_KINDS = {
    ".jpg": MediaKind.IMAGE,
    ".jpeg": MediaKind.IMAGE,
    ".png": MediaKind.IMAGE,
    ".webp": MediaKind.IMAGE,
    ".bmp": MediaKind.IMAGE,
    ".tif": MediaKind.IMAGE,
    ".tiff": MediaKind.IMAGE,
    ".gif": MediaKind.ANIMATED_IMAGE,
    ".apng": MediaKind.ANIMATED_IMAGE,
    ".mp4": MediaKind.VIDEO,
    ".webm": MediaKind.VIDEO,
    ".mov": MediaKind.VIDEO,
    ".avi": MediaKind.VIDEO,
    ".mkv": MediaKind.VIDEO,
    ".pdf": MediaKind.PDF,
    ".txt": MediaKind.TEXT,
    ".md": MediaKind.TEXT,
}


def infer_media_kind(source: str) -> MediaKind:
    """Best-effort media kind from a source URL or path; web page otherwise."""
    path = urlsplit(source).path
    ext = os.path.splitext(path)[1].lower()
    return _EXTENSION_KINDS.get(ext, MediaKind.WEB_PAGE)


def import_legacy_episode(
    data: bytes | str,
    scene_id: str = "imported-episodes",
    title: str = "Imported episodes",
) -> Scene:
    """Lift a legacy per-episode pin file into a conditional-access scene.

    Each content entry becomes one document plus one pin; ``lock`` flips the
    pin's activation; every document of episode k+1 requires all documents
    of episode k, so themes unlock in episode order.
    """
    payload = _load_json(data)
    obj = _expect_object(payload, "$")
    episodes: list[tuple[int, str, dict]] = []
    for key, value in obj.items():
        m = _EPISODE_RE.match(key)
        if not m:
            raise FieldPathError(f"$.{key}", "expected an 'episode-<n>-data' object")
        episodes.append((int(m.group(1)), key, _expect_object(value, f"$.{key}")))
    episodes.sort(key=lambda item: item[0])

    documents: list[MultimediaDocument] = []
    thumbnails: list[Thumbnail] = []
    pins: list[GeoPin] = []
    prerequisites: dict[str, frozenset[str]] = {}
    previous_episode_ids: list[str] = []
    for episode_num, episode_key, contents_obj in episodes:
        contents: list[tuple[int, str, dict]] = []
        for ckey, cvalue in contents_obj.items():
            m = _CONTENT_RE.match(ckey)
            if not m:
                raise FieldPathError(f"$.{episode_key}.{ckey}", "expected a 'content-<n>' entry")
            contents.append((int(m.group(1)), ckey, _expect_object(cvalue, f"$.{episode_key}.{ckey}")))
        contents.sort(key=lambda item: item[0])

        episode_ids: list[str] = []
        for content_num, content_key, entry in contents:
            path = f"$.{episode_key}.{content_key}"
            lock = _boolean(_required(entry, "lock", path), f"{path}.lock")
            pos = _expect_object(_required(entry, "position", path), f"{path}.position")
            anchor = _build(
                f"{path}.position",
                Vec3,
                _number(_required(pos, "x", f"{path}.position"), f"{path}.position.x"),
                _number(_required(pos, "y", f"{path}.position"), f"{path}.position.y"),
                _number(_required(pos, "z", f"{path}.position"), f"{path}.position.z"),
            )
            img_unlock = _string(_required(entry, "imgUnlock", path), f"{path}.imgUnlock", allow_empty=False)
            img_lock = _string(_required(entry, "imgLock", path), f"{path}.imgLock", allow_empty=False)
            text = _string(_required(entry, "text", path), f"{path}.text")
            src = _string(_required(entry, "src", path), f"{path}.src", allow_empty=False)

            doc_id = f"episode-{episode_num}-content-{content_num}"
            thumb = _build(path, Thumbnail, doc_id, img_unlock, img_lock)
            documents.append(
                _build(path, MultimediaDocument, doc_id, infer_media_kind(src), src, title=text)
            )
            thumbnails.append(thumb)
            pins.append(
                _build(
                    path,
                    GeoPin,
                    f"{doc_id}-pin",
                    doc_id,
                    anchor,
                    thumb,
                    activated=not lock,
                )
            )
            episode_ids.append(doc_id)
            if previous_episode_ids:
                prerequisites[doc_id] = frozenset(previous_episode_ids)
        previous_episode_ids = episode_ids

    return Scene(
        scene_id=scene_id,
        title=title,
        crs_note="coordinates taken as scene-local values from the source file (no CRS declared)",
        documents=tuple(documents),
        thumbnails=tuple(thumbnails),
        pins=tuple(pins),
        guidance=GuidanceSpec(GuidanceMode.CONDITIONAL, GuidanceGraph(prerequisites, ())),
    )


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------


def _check_finite(findings: list[Finding], subject: str, label: str, *values: float) -> None:
    for v in values:
        if not math.isfinite(v):
            findings.append(Finding("non_finite", subject, f"{label} has non-finite component"))
            return


def validate_scene(scene: Scene) -> list[Finding]:
    """Aggregate referential, geometric, and guidance checks.

    An empty report means every reference resolves, all geometry is sane,
    and the guidance graph lets the user exhaust the scene.
    """
    findings: list[Finding] = []
    doc_ids = scene.document_ids

    seen_docs: set[str] = set()
    for d in scene.documents:
        if d.id in seen_docs:
            findings.append(Finding("duplicate_document", d.id, "document id declared twice"))
        seen_docs.add(d.id)

    entity_refs: list[tuple[str, str]] = [
        *((p.entity_id, p.document_id) for p in scene.pins),
        *((b.entity_id, b.document_id) for b in scene.web_boards),
        *((e.entity_id, e.document_id) for e in scene.extended_documents),
    ]
    seen_entities: set[str] = set()
    for entity_id in (
        *(p.entity_id for p in scene.pins),
        *(b.entity_id for b in scene.web_boards),
        *(e.entity_id for e in scene.extended_documents),
        *(s.entity_id for s in scene.slideshows),
    ):
        if entity_id in seen_entities:
            findings.append(Finding("duplicate_entity", entity_id, "entity id declared twice"))
        seen_entities.add(entity_id)

    for entity_id, document_id in entity_refs:
        if document_id not in doc_ids:
            findings.append(
                Finding("dangling_reference", entity_id, f"references unknown document {document_id!r}")
            )
    for s in scene.slideshows:
        for m in s.media:
            if m not in doc_ids:
                findings.append(
                    Finding("dangling_reference", s.entity_id, f"slideshow media {m!r} is unknown")
                )
    for t in scene.thumbnails:
        if t.document_id not in doc_ids:
            findings.append(
                Finding("dangling_reference", t.document_id, "thumbnail for unknown document")
            )

    # Geometry re-checks; constructors enforce these, so hits here mean the
    # scene was assembled by something bypassing them.
    for p in scene.pins:
        _check_finite(findings, p.entity_id, "anchor", p.anchor.x, p.anchor.y, p.anchor.z)
    for b in scene.web_boards:
        _check_finite(findings, b.entity_id, "anchor", b.anchor.x, b.anchor.y, b.anchor.z)
        if b.size.width_m <= 0 or b.size.height_m <= 0:
            findings.append(Finding("invalid_size", b.entity_id, "board size must be positive"))
    for e in scene.extended_documents:
        pos, q = e.camera.position, e.camera.orientation
        _check_finite(findings, e.entity_id, "camera", pos.x, pos.y, pos.z, q.w, q.x, q.y, q.z)
        if not 0.0 <= e.overlay_opacity <= 1.0:
            findings.append(Finding("invalid_opacity", e.entity_id, "opacity outside [0, 1]"))
    for s in scene.slideshows:
        _check_finite(findings, s.entity_id, "center", s.center.x, s.center.y, s.center.z)
        if s.size.width_m <= 0 or s.size.height_m <= 0:
            findings.append(Finding("invalid_size", s.entity_id, "slideshow size must be positive"))

    findings.extend(validate_guidance_graph(scene))
    return findings


def validate_scene_bytes(data: bytes | str) -> list[Finding]:
    """Validate a scene file; parse failures become a single finding."""
    try:
        scene = parse_scene(data)
    except SceneSyntaxError as exc:
        return [Finding("syntax_error", f"byte {exc.byte_offset}", exc.message)]
    except FieldPathError as exc:
        return [Finding("field_path", exc.path, exc.message)]
    return validate_scene(scene)
