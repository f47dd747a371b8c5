"""Deterministic GetMap URL construction for WMS layers.

Only URL building lives here; fetching and rendering the map imagery is
the viewer's job. Parameter order is fixed so the same inputs always
produce byte-identical URLs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from urllib.parse import quote

from .errors import InvalidBboxError, InvalidParameterError
from .sceneconfig import GeoserviceKind, GeoserviceLayer

WMS_VERSION = "1.3.0"

# Legal query sub-delimiters kept literal so BBOX commas, EPSG colons and
# media-type slashes survive unescaped, as servers conventionally expect.
_QUERY_SAFE = ",:/"


@dataclass(frozen=True)
class BBox:
    minx: float
    miny: float
    maxx: float
    maxy: float

    def __post_init__(self):
        for v in (self.minx, self.miny, self.maxx, self.maxy):
            if not isinstance(v, (int, float)) or isinstance(v, bool) or not math.isfinite(v):
                raise InvalidBboxError(f"bbox components must be finite numbers, got {v!r}")
        if self.minx >= self.maxx or self.miny >= self.maxy:
            raise InvalidBboxError(
                f"bbox min must be below max, got ({self.minx}, {self.miny}, {self.maxx}, {self.maxy})"
            )


def _fmt_number(v: float) -> str:
    if isinstance(v, int) or v == int(v):
        return str(int(v))
    return repr(float(v))


def build_wms_map_url(
    layer: GeoserviceLayer,
    bbox: BBox,
    width_px: int,
    height_px: int,
    crs_code: str,
    image_format: str = "image/png",
) -> str:
    """GetMap query for ``layer`` over ``bbox`` at the given pixel size.

    The bbox is interpreted in ``crs_code`` axis order as announced; no
    axis swapping happens here.
    """
    if layer.kind is not GeoserviceKind.WMS:
        raise InvalidParameterError(f"GetMap needs a wms layer, got kind {layer.kind.value!r}")
    for name, v in (("width_px", width_px), ("height_px", height_px)):
        if isinstance(v, bool) or not isinstance(v, int) or v <= 0:
            raise InvalidParameterError(f"{name} must be a positive integer, got {v!r}")

    params: list[tuple[str, str]] = [
        ("SERVICE", "WMS"),
        ("VERSION", WMS_VERSION),
        ("REQUEST", "GetMap"),
        ("LAYERS", layer.layer_name),
    ]
    if layer.default_style is not None:
        params.append(("STYLES", layer.default_style))
    params.extend(
        [
            ("CRS", crs_code),
            (
                "BBOX",
                ",".join(
                    _fmt_number(v) for v in (bbox.minx, bbox.miny, bbox.maxx, bbox.maxy)
                ),
            ),
            ("WIDTH", str(width_px)),
            ("HEIGHT", str(height_px)),
            ("FORMAT", image_format),
        ]
    )
    query = "&".join(f"{k}={quote(v, safe=_QUERY_SAFE)}" for k, v in params)
    separator = "&" if "?" in layer.base_url else "?"
    return f"{layer.base_url}{separator}{query}"
