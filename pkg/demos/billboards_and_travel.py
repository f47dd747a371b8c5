#!/usr/bin/env python3
"""Scene geometry walkthrough: anchoring, billboards, camera travel.

Run from the repository root:

    python3 demos/billboards_and_travel.py
"""

from mediascene import (
    CameraPose,
    Easing,
    GeodeticCoord,
    Quaternion,
    Vec3,
    billboard_rotation,
    enu_from_geodetic,
    geodetic_from_enu,
    travel_plan,
)

# A scene is anchored at one geodetic origin; documents tagged with WGS84
# positions are converted into the local east-north-up frame once.
origin = GeodeticCoord(longitude_deg=4.85, latitude_deg=45.75, altitude_m=200.0)
photo_spot = GeodeticCoord(4.852, 45.751, 230.0)

local = enu_from_geodetic(photo_spot, origin)
print(f"photo spot in scene coordinates: east={local.x:.2f} m, north={local.y:.2f} m, up={local.z:.2f} m")

back = geodetic_from_enu(local, origin)
print(f"and back to WGS84: lon={back.longitude_deg:.7f}, lat={back.latitude_deg:.7f}, alt={back.altitude_m:.3f}")

# Pins and web boards continuously re-face the camera. The rotation keeps
# the board upright: its right axis stays perpendicular to world up.
anchor = Vec3(0.0, 0.0, 15.0)
for camera in (Vec3(0, 120, 20), Vec3(120, 0, 20), Vec3(-80, -80, 60)):
    q = billboard_rotation(anchor, camera, Vec3(0, 0, 1))
    fwd = q.rotate(Vec3(0, 0, 1))
    print(f"camera at ({camera.x:7.1f},{camera.y:7.1f},{camera.z:5.1f}) -> board normal ({fwd.x:+.3f},{fwd.y:+.3f},{fwd.z:+.3f})")

# Engaging an extended document flies the camera to its configured pose.
start = CameraPose(Vec3(0, 0, 50), Quaternion.identity())
target = CameraPose(Vec3(400, 150, 80), billboard_rotation(Vec3(400, 150, 80), Vec3(0, 0, 15)))
plan = travel_plan(start, target, speed_mps=80.0, min_duration_s=1.5, easing=Easing.SMOOTHSTEP)
print(f"\ncamera travel takes {plan.duration_s:.2f} s:")
for t in (0.0, 0.25, 0.5, 0.75, 1.0):
    pose = plan.sample(t)
    p = pose.position
    print(f"  t={t:4.2f}  position=({p.x:7.2f}, {p.y:7.2f}, {p.z:6.2f})")
