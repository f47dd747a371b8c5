"""Geospatial multimedia scenes for 3D city models.

The library side of the package: scene geometry and billboard math
(:mod:`mediascene.geo`), document metadata (:mod:`mediascene.documents`),
the four placement modalities (:mod:`mediascene.modalities`), guided-access
state machines (:mod:`mediascene.guidance`), scene configuration files
(:mod:`mediascene.sceneconfig`), and WMS URL building (:mod:`mediascene.wms`).
The HTTP service lives in :mod:`mediascene.service`, operator tooling in
:mod:`mediascene.cli`.
"""

from .documents import (
    DocumentFilter,
    MediaKind,
    MultimediaDocument,
    Thumbnail,
    filter_documents,
    sort_by_reference_date,
)
from .errors import (
    DanglingReferenceError,
    DegenerateViewError,
    EmptySlideshowError,
    FieldPathError,
    InvalidBboxError,
    InvalidCoordinateError,
    InvalidParameterError,
    InvalidPoseError,
    InvalidRangeError,
    InvalidSizeError,
    LockedContentError,
    MediasceneError,
    MisconfiguredGuidanceError,
    ParameterRangeError,
    SceneParseError,
    SceneSyntaxError,
    UnsupportedMediaError,
)
from .geo import (
    CameraPose,
    Easing,
    GeodeticCoord,
    Quaternion,
    TravelPlan,
    Vec3,
    billboard_rotation,
    enu_from_geodetic,
    geodetic_from_enu,
    interpolate_pose,
    slerp,
    travel_plan,
)
from .guidance import (
    GuidanceGraph,
    GuidanceMode,
    GuidanceState,
    available_documents,
    new_session,
    progress,
    record_view,
    simulate_exhaustion,
    validate_guidance_graph,
)
from .modalities import (
    ExtendedDocumentEntity,
    GeoPin,
    GeoWebBoard,
    PanelOpenResult,
    PlaneSize,
    ScreenAnchor,
    Slideshow,
    SlideshowOrientation,
    ViewPlan,
    apply_availability,
    build_view_plan,
    open_pin,
    set_overlay_opacity,
    slideshow_quad,
    slideshow_step,
)
from .sceneconfig import (
    GeoserviceKind,
    GeoserviceLayer,
    GuidanceSpec,
    Scene,
    import_legacy_episode,
    infer_media_kind,
    parse_scene,
    serialize_scene,
    validate_scene,
    validate_scene_bytes,
)
from .validation import Finding
from .wms import BBox, build_wms_map_url

__version__ = "0.1.0"
