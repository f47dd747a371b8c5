from __future__ import annotations

import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mediascene.errors import (
    DegenerateViewError,
    InvalidCoordinateError,
    InvalidParameterError,
    ParameterRangeError,
)
from mediascene.geo import (
    CameraPose,
    Easing,
    GeodeticCoord,
    Quaternion,
    Vec3,
    billboard_rotation,
    enu_from_geodetic,
    geodetic_from_enu,
    interpolate_pose,
    slerp,
    travel_plan,
)

# ---------------------------------------------------------------------------
# Independent oracle: WGS84 ECEF of both points plus an explicit rotation
# matrix, written out from the textbook formulas. Kept separate from the
# implementation on purpose.
# ---------------------------------------------------------------------------

_OA = 6378137.0
_OF = 1.0 / 298.257223563
_OE2 = _OF * (2.0 - _OF)


def oracle_ecef(lon_deg: float, lat_deg: float, h: float) -> tuple[float, float, float]:
    lam = math.radians(lon_deg)
    phi = math.radians(lat_deg)
    n = _OA / math.sqrt(1.0 - _OE2 * math.sin(phi) ** 2)
    return (
        (n + h) * math.cos(phi) * math.cos(lam),
        (n + h) * math.cos(phi) * math.sin(lam),
        (n * (1.0 - _OE2) + h) * math.sin(phi),
    )


def oracle_enu(
    p: tuple[float, float, float], origin: tuple[float, float, float]
) -> tuple[float, float, float]:
    px, py, pz = oracle_ecef(*p)
    ox, oy, oz = oracle_ecef(*origin)
    d = (px - ox, py - oy, pz - oz)
    lam = math.radians(origin[0])
    phi = math.radians(origin[1])
    rot = (
        (-math.sin(lam), math.cos(lam), 0.0),
        (-math.sin(phi) * math.cos(lam), -math.sin(phi) * math.sin(lam), math.cos(phi)),
        (math.cos(phi) * math.cos(lam), math.cos(phi) * math.sin(lam), math.sin(phi)),
    )
    return tuple(sum(r[i] * d[i] for i in range(3)) for r in rot)  # type: ignore[return-value]


def angle_between(a: Vec3, b: Vec3) -> float:
    # atan2 keeps precision for very small angles where acos cannot.
    return math.atan2(a.cross(b).norm(), a.dot(b))


# ---------------------------------------------------------------------------
# ENU <-> geodetic
# ---------------------------------------------------------------------------


def test_enu_identity_at_origin():
    origin = GeodeticCoord(4.85, 45.7, 210.0)
    assert enu_from_geodetic(origin, origin) == Vec3(0.0, 0.0, 0.0)


def test_enu_equator_millidegree_matches_oracle():
    origin = GeodeticCoord(0.0, 0.0, 0.0)
    p = GeodeticCoord(0.001, 0.0, 0.0)
    v = enu_from_geodetic(p, origin)
    ex, ey, ez = oracle_enu((0.001, 0.0, 0.0), (0.0, 0.0, 0.0))
    assert abs(v.x - ex) < 1e-9 and abs(v.y - ey) < 1e-9 and abs(v.z - ez) < 1e-9
    assert abs(v.x - 111.3195) < 1e-3
    assert abs(v.y) < 1e-3
    assert abs(v.z) < 1e-3


def test_enu_pure_altitude_offset():
    origin = GeodeticCoord(4.85, 45.7, 0.0)
    p = GeodeticCoord(4.85, 45.7, 50.0)
    v = enu_from_geodetic(p, origin)
    assert abs(v.x) < 1e-6 and abs(v.y) < 1e-6 and abs(v.z - 50.0) < 1e-6


def test_geodetic_from_enu_identity():
    origin = GeodeticCoord(4.85, 45.7, 210.0)
    back = geodetic_from_enu(Vec3(0.0, 0.0, 0.0), origin)
    assert abs(back.longitude_deg - origin.longitude_deg) < 1e-9
    assert abs(back.latitude_deg - origin.latitude_deg) < 1e-9
    assert abs(back.altitude_m - origin.altitude_m) < 1e-6


def test_geodetic_from_enu_altitude_only():
    origin = GeodeticCoord(-71.25, -33.5, 12.0)
    back = geodetic_from_enu(Vec3(0.0, 0.0, 50.0), origin)
    assert abs(back.longitude_deg - origin.longitude_deg) < 1e-9
    assert abs(back.latitude_deg - origin.latitude_deg) < 1e-9
    assert abs(back.altitude_m - 62.0) < 1e-6


def test_round_trip_near_equator_millidegree():
    origin = GeodeticCoord(0.0, 0.0, 0.0)
    p = GeodeticCoord(0.001, 0.0, 0.0)
    back = geodetic_from_enu(enu_from_geodetic(p, origin), origin)
    assert abs(back.longitude_deg - p.longitude_deg) < 1e-9
    assert abs(back.latitude_deg - p.latitude_deg) < 1e-9
    assert abs(back.altitude_m - p.altitude_m) < 1e-6


@given(
    lon=st.floats(-179.0, 179.0),
    lat=st.floats(-85.0, 85.0),
    alt=st.floats(-100.0, 3000.0),
    de=st.floats(-7000.0, 7000.0),
    dn=st.floats(-7000.0, 7000.0),
    du=st.floats(-500.0, 500.0),
)
@settings(max_examples=200, deadline=None)
def test_round_trip_property(lon, lat, alt, de, dn, du):
    origin = GeodeticCoord(lon, lat, alt)
    p = geodetic_from_enu(Vec3(de, dn, du), origin)
    v = enu_from_geodetic(p, origin)
    back = geodetic_from_enu(v, origin)
    assert abs(back.longitude_deg - p.longitude_deg) < 1e-9
    assert abs(back.latitude_deg - p.latitude_deg) < 1e-9
    assert abs(back.altitude_m - p.altitude_m) < 1e-6


def test_non_finite_coordinates_rejected():
    with pytest.raises(InvalidCoordinateError):
        GeodeticCoord(float("nan"), 0.0, 0.0)
    with pytest.raises(InvalidCoordinateError):
        GeodeticCoord(0.0, float("inf"), 0.0)
    with pytest.raises(InvalidCoordinateError):
        Vec3(0.0, float("nan"), 0.0)
    with pytest.raises(InvalidCoordinateError):
        GeodeticCoord(181.0, 0.0, 0.0)
    with pytest.raises(InvalidCoordinateError):
        GeodeticCoord(0.0, 91.0, 0.0)


# ---------------------------------------------------------------------------
# Billboard orientation
# ---------------------------------------------------------------------------


def test_billboard_faces_camera_north():
    q = billboard_rotation(Vec3(0, 0, 0), Vec3(0, 10, 0), Vec3(0, 0, 1))
    fwd = q.rotate(Vec3(0, 0, 1))
    # Hand-built basis: fwd=(0,1,0), up=(0,0,1), right=up x fwd=(-1,0,0).
    assert angle_between(fwd, Vec3(0, 1, 0)) < 1e-9
    up = q.rotate(Vec3(0, 1, 0))
    assert angle_between(up, Vec3(0, 0, 1)) < 1e-9


def test_billboard_degenerate_anchor_equals_camera():
    with pytest.raises(DegenerateViewError):
        billboard_rotation(Vec3(1, 2, 3), Vec3(1, 2, 3), Vec3(0, 0, 1))


def test_billboard_right_axis_is_roll_free():
    q = billboard_rotation(Vec3(0, 0, 0), Vec3(10, 0, 0), Vec3(0, 0, 1))
    right = q.rotate(Vec3(1, 0, 0))
    assert abs(right.z) < 1e-9


def test_billboard_vertical_fallback_yaw_zero():
    q = billboard_rotation(Vec3(0, 0, 0), Vec3(0, 0, 10), Vec3(0, 0, 1))
    right = q.rotate(Vec3(1, 0, 0))
    assert angle_between(right, Vec3(1, 0, 0)) < 1e-9
    fwd = q.rotate(Vec3(0, 0, 1))
    assert angle_between(fwd, Vec3(0, 0, 1)) < 1e-9


def test_billboard_vertical_fallback_keeps_previous_yaw():
    prev = billboard_rotation(Vec3(0, 0, 0), Vec3(0, 10, 0), Vec3(0, 0, 1))
    prev_right = prev.rotate(Vec3(1, 0, 0))
    q = billboard_rotation(Vec3(0, 0, 0), Vec3(0, 0, 10), Vec3(0, 0, 1), prev=prev)
    right = q.rotate(Vec3(1, 0, 0))
    assert angle_between(right, prev_right) < 1e-9


def test_billboard_rejects_non_unit_up():
    with pytest.raises(InvalidParameterError):
        billboard_rotation(Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(0, 0, 2))


def test_billboard_random_pairs_face_and_stay_upright():
    rng = random.Random(1234)
    up = Vec3(0, 0, 1)
    for _ in range(500):
        anchor = Vec3(rng.uniform(-1e3, 1e3), rng.uniform(-1e3, 1e3), rng.uniform(-50, 300))
        camera = Vec3(rng.uniform(-1e3, 1e3), rng.uniform(-1e3, 1e3), rng.uniform(-50, 300))
        want = camera - anchor
        if want.norm() < 1e-6 or want.cross(up).norm() / want.norm() < 1e-3:
            continue
        q = billboard_rotation(anchor, camera, up)
        assert angle_between(q.rotate(Vec3(0, 0, 1)), want) < 1e-9
        assert abs(q.rotate(Vec3(1, 0, 0)).dot(up)) < 1e-9
        norm = math.sqrt(q.w**2 + q.x**2 + q.y**2 + q.z**2)
        assert abs(norm - 1.0) < 1e-9


# ---------------------------------------------------------------------------
# Easing and interpolation
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("easing", list(Easing))
def test_easing_contract(easing):
    assert easing.apply(0.0) == 0.0
    assert easing.apply(1.0) == 1.0
    prev = 0.0
    for i in range(1, 1001):
        val = easing.apply(i / 1000.0)
        assert val >= prev - 1e-15
        prev = val


def _pose(x, y, z, q=None):
    return CameraPose(Vec3(x, y, z), q or Quaternion.identity())


def test_interpolate_endpoints_exact():
    a = _pose(1.0, 2.0, 3.0)
    b = _pose(-4.0, 5.0, 6.0, Quaternion(0.0, 0.0, 0.0, 1.0))
    assert interpolate_pose(a, b, 0.0) == a
    assert interpolate_pose(a, b, 1.0) == b


def test_interpolate_smoothstep_midpoint():
    a = _pose(0.0, 0.0, 0.0)
    b = _pose(10.0, 0.0, 0.0)
    mid = interpolate_pose(a, b, 0.5, Easing.SMOOTHSTEP)
    # smoothstep(0.5) = 3*0.25 - 2*0.125 = 0.5 exactly
    assert mid.position == Vec3(5.0, 0.0, 0.0)


def test_interpolate_rejects_out_of_range():
    a, b = _pose(0, 0, 0), _pose(1, 0, 0)
    for t in (-0.01, 1.01, float("nan")):
        with pytest.raises(ParameterRangeError):
            interpolate_pose(a, b, t)


def test_interpolate_norm_and_monotone_distance():
    a = _pose(0, 0, 0, billboard_rotation(Vec3(0, 0, 0), Vec3(0, 10, 0)))
    b = _pose(40, -3, 7, billboard_rotation(Vec3(0, 0, 0), Vec3(10, 0, 5)))
    last_dist = -1.0
    for i in range(101):
        p = interpolate_pose(a, b, i / 100.0, Easing.SMOOTHERSTEP)
        q = p.orientation
        assert abs(math.sqrt(q.w**2 + q.x**2 + q.y**2 + q.z**2) - 1.0) < 1e-9
        dist = (p.position - a.position).norm()
        assert dist >= last_dist - 1e-9
        last_dist = dist


def test_slerp_takes_shortest_arc():
    a = Quaternion.identity()
    # 240 degrees about z: the long way round; slerp must flip to the 120 side.
    half = math.radians(240.0) / 2.0
    b = Quaternion(math.cos(half), 0.0, 0.0, math.sin(half))
    mid = slerp(a, b, 0.5)
    fwd = mid.rotate(Vec3(1, 0, 0))
    # Shortest arc from identity to 240deg-about-z is -120deg; midpoint -60deg.
    want = Vec3(math.cos(math.radians(-60)), math.sin(math.radians(-60)), 0.0)
    assert angle_between(fwd, want) < 1e-9


# ---------------------------------------------------------------------------
# Travel plans
# ---------------------------------------------------------------------------


def test_travel_plan_degenerate_when_poses_equal():
    a = _pose(1, 1, 1)
    plan = travel_plan(a, a, speed_mps=50.0, min_duration_s=1.0)
    assert plan.duration_s == 1.0
    assert plan.sample(0.0) == a
    assert plan.sample(0.37) == a
    assert plan.sample(1.0) == a


def test_travel_plan_duration_from_distance():
    plan = travel_plan(_pose(0, 0, 0), _pose(100, 0, 0), speed_mps=50.0, min_duration_s=1.0)
    assert plan.duration_s == 2.0


def test_travel_plan_min_duration_floor():
    plan = travel_plan(_pose(0, 0, 0), _pose(10, 0, 0), speed_mps=50.0, min_duration_s=1.0)
    assert plan.duration_s == 1.0


def test_travel_plan_rejects_bad_parameters():
    a, b = _pose(0, 0, 0), _pose(1, 0, 0)
    with pytest.raises(InvalidParameterError):
        travel_plan(a, b, speed_mps=0.0)
    with pytest.raises(InvalidParameterError):
        travel_plan(a, b, min_duration_s=-1.0)
