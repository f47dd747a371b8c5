#!/usr/bin/env python3
"""Deterministic GetMap URLs for the geoservice layers a scene declares.

Run from the repository root:

    python3 demos/wms_urls.py
"""

from mediascene import BBox, GeoserviceKind, GeoserviceLayer, build_wms_map_url

layers = [
    GeoserviceLayer(GeoserviceKind.WMS, "https://geo.example.org/wms", "cadastre"),
    GeoserviceLayer(GeoserviceKind.WMS, "https://geo.example.org/wms", "atmospheric_index", "heat"),
    GeoserviceLayer(GeoserviceKind.WMS, "https://geo.example.org/wms?map=town", "bus lines"),
]

view = BBox(1843000.0, 5164900.0, 1844200.0, 5165900.0)

for layer in layers:
    url = build_wms_map_url(layer, view, 1024, 768, "EPSG:3946")
    print(f"{layer.layer_name}:")
    print(f"  {url}\n")
