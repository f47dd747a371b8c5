"""Scene-space geometry: WGS84/ENU transforms, camera poses, billboards.

Positions live in a local east-north-up (ENU) frame tangent to the WGS84
ellipsoid at a per-scene origin. Configuration files may instead carry
already-projected coordinates; those pass through untransformed and the
functions here are only used when ingesting WGS84-tagged data.

The ENU mapping goes through ECEF and a tangent-plane rotation, so it is
exactly invertible up to floating-point noise. It is a local frame: beyond
roughly 100 km from the origin the flat-plane reading of x/y stops being
meaningful for display purposes (the math itself stays exact).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .errors import (
    DegenerateViewError,
    InvalidCoordinateError,
    InvalidParameterError,
    InvalidPoseError,
    ParameterRangeError,
)

# WGS84 ellipsoid
_A = 6378137.0
_F = 1.0 / 298.257223563
_E2 = _F * (2.0 - _F)
_B = _A * (1.0 - _F)

# Below this camera-anchor distance a billboard has no defined facing.
DEGENERATE_DISTANCE_M = 1e-9
# Facing directions within this angle of the up axis use the yaw fallback.
VERTICAL_FALLBACK_RAD = 1e-6

DEFAULT_SPEED_MPS = 80.0
DEFAULT_MIN_DURATION_S = 1.5


def _require_finite(label: str, *values: float) -> None:
    for v in values:
        if not isinstance(v, (int, float)) or isinstance(v, bool) or not math.isfinite(v):
            raise InvalidCoordinateError(f"{label}: non-finite component {v!r}")


@dataclass(frozen=True)
class GeodeticCoord:
    """WGS84 position in decimal degrees plus meters above the ellipsoid."""

    longitude_deg: float
    latitude_deg: float
    altitude_m: float = 0.0

    def __post_init__(self):
        _require_finite("GeodeticCoord", self.longitude_deg, self.latitude_deg, self.altitude_m)
        if not -180.0 <= self.longitude_deg <= 180.0:
            raise InvalidCoordinateError(
                f"longitude {self.longitude_deg} outside [-180, 180]"
            )
        if not -90.0 <= self.latitude_deg <= 90.0:
            raise InvalidCoordinateError(f"latitude {self.latitude_deg} outside [-90, 90]")


@dataclass(frozen=True)
class Vec3:
    """Point or direction in the local scene frame (x=east, y=north, z=up)."""

    x: float
    y: float
    z: float

    def __post_init__(self):
        _require_finite("Vec3", self.x, self.y, self.z)

    def __add__(self, other: "Vec3") -> "Vec3":
        return Vec3(self.x + other.x, self.y + other.y, self.z + other.z)

    def __sub__(self, other: "Vec3") -> "Vec3":
        return Vec3(self.x - other.x, self.y - other.y, self.z - other.z)

    def scaled(self, k: float) -> "Vec3":
        return Vec3(self.x * k, self.y * k, self.z * k)

    def dot(self, other: "Vec3") -> float:
        return self.x * other.x + self.y * other.y + self.z * other.z

    def cross(self, other: "Vec3") -> "Vec3":
        return Vec3(
            self.y * other.z - self.z * other.y,
            self.z * other.x - self.x * other.z,
            self.x * other.y - self.y * other.x,
        )

    def norm(self) -> float:
        return math.sqrt(self.dot(self))

    def normalized(self) -> "Vec3":
        n = self.norm()
        if n == 0.0:
            raise InvalidParameterError("cannot normalize a zero vector")
        return self.scaled(1.0 / n)


@dataclass(frozen=True)
class Quaternion:
    """Rotation as a unit quaternion (w + xi + yj + zk).

    Constructors normalize any non-zero input, so instances always carry
    unit norm; already-unit components are kept bit-identical.
    """

    w: float
    x: float
    y: float
    z: float

    def __post_init__(self):
        for v in (self.w, self.x, self.y, self.z):
            if not isinstance(v, (int, float)) or isinstance(v, bool) or not math.isfinite(v):
                raise InvalidParameterError(f"Quaternion: non-finite component {v!r}")
        n = math.sqrt(self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z)
        if n == 0.0:
            raise InvalidParameterError("Quaternion: zero norm")
        if abs(n - 1.0) > 1e-12:
            object.__setattr__(self, "w", self.w / n)
            object.__setattr__(self, "x", self.x / n)
            object.__setattr__(self, "y", self.y / n)
            object.__setattr__(self, "z", self.z / n)

    @staticmethod
    def identity() -> "Quaternion":
        return Quaternion(1.0, 0.0, 0.0, 0.0)

    def dot(self, other: "Quaternion") -> float:
        return (
            self.w * other.w + self.x * other.x + self.y * other.y + self.z * other.z
        )

    def rotate(self, v: Vec3) -> Vec3:
        # v' = v + 2 w (u x v) + 2 u x (u x v), u = (x, y, z)
        u = Vec3(self.x, self.y, self.z)
        uv = u.cross(v)
        uuv = u.cross(uv)
        return Vec3(
            v.x + 2.0 * (self.w * uv.x + uuv.x),
            v.y + 2.0 * (self.w * uv.y + uuv.y),
            v.z + 2.0 * (self.w * uv.z + uuv.z),
        )


@dataclass(frozen=True)
class CameraPose:
    position: Vec3
    orientation: Quaternion


class Easing(Enum):
    """Time-remap curves for camera travel; all fix 0->0 and 1->1."""

    LINEAR = "linear"
    SMOOTHSTEP = "smoothstep"
    SMOOTHERSTEP = "smootherstep"

    def apply(self, t: float) -> float:
        if self is Easing.LINEAR:
            return t
        if self is Easing.SMOOTHSTEP:
            return t * t * (3.0 - 2.0 * t)
        return t * t * t * (t * (6.0 * t - 15.0) + 10.0)


DEFAULT_EASING = Easing.SMOOTHSTEP


def _geodetic_to_ecef(p: GeodeticCoord) -> tuple[float, float, float]:
    lam = math.radians(p.longitude_deg)
    phi = math.radians(p.latitude_deg)
    sp, cp = math.sin(phi), math.cos(phi)
    sl, cl = math.sin(lam), math.cos(lam)
    n = _A / math.sqrt(1.0 - _E2 * sp * sp)
    return (
        (n + p.altitude_m) * cp * cl,
        (n + p.altitude_m) * cp * sl,
        (n * (1.0 - _E2) + p.altitude_m) * sp,
    )


def _ecef_to_geodetic(x: float, y: float, z: float) -> GeodeticCoord:
    rho = math.hypot(x, y)
    if rho < 1e-9:
        # On the polar axis: longitude is arbitrary, use 0.
        lat = 90.0 if z >= 0.0 else -90.0
        return GeodeticCoord(0.0, lat, abs(z) - _B)
    lon = math.degrees(math.atan2(y, x))
    phi = math.atan2(z, rho * (1.0 - _E2))
    n = _A
    h = 0.0
    for _ in range(16):
        sp = math.sin(phi)
        n = _A / math.sqrt(1.0 - _E2 * sp * sp)
        if abs(phi) < 0.7853981633974483:  # pi/4: pick the better-conditioned height
            h = rho / math.cos(phi) - n
        else:
            h = z / sp - n * (1.0 - _E2)
        phi_next = math.atan2(z, rho * (1.0 - _E2 * n / (n + h)))
        if abs(phi_next - phi) < 1e-15:
            phi = phi_next
            break
        phi = phi_next
    return GeodeticCoord(lon, math.degrees(phi), h)


def enu_from_geodetic(p: GeodeticCoord, origin: GeodeticCoord) -> Vec3:
    """East/north/up offset of ``p`` from ``origin`` on the WGS84 ellipsoid."""
    px, py, pz = _geodetic_to_ecef(p)
    ox, oy, oz = _geodetic_to_ecef(origin)
    dx, dy, dz = px - ox, py - oy, pz - oz
    lam = math.radians(origin.longitude_deg)
    phi = math.radians(origin.latitude_deg)
    sp, cp = math.sin(phi), math.cos(phi)
    sl, cl = math.sin(lam), math.cos(lam)
    return Vec3(
        -sl * dx + cl * dy,
        -sp * cl * dx - sp * sl * dy + cp * dz,
        cp * cl * dx + cp * sl * dy + sp * dz,
    )


def geodetic_from_enu(v: Vec3, origin: GeodeticCoord) -> GeodeticCoord:
    """Inverse of :func:`enu_from_geodetic`.

    Intended for offsets within ~100 km of the origin, where the local
    frame is meaningful; the round trip recovers the source coordinate to
    well below 1e-9 degrees / 1e-6 m for points within 10 km.
    """
    lam = math.radians(origin.longitude_deg)
    phi = math.radians(origin.latitude_deg)
    sp, cp = math.sin(phi), math.cos(phi)
    sl, cl = math.sin(lam), math.cos(lam)
    ox, oy, oz = _geodetic_to_ecef(origin)
    # Transpose of the ENU rotation.
    dx = -sl * v.x - sp * cl * v.y + cp * cl * v.z
    dy = cl * v.x - sp * sl * v.y + cp * sl * v.z
    dz = cp * v.y + sp * v.z
    return _ecef_to_geodetic(ox + dx, oy + dy, oz + dz)


def _quat_from_basis(xa: Vec3, ya: Vec3, za: Vec3) -> Quaternion:
    # Rotation matrix with columns (xa, ya, za), converted via Shepperd's method.
    m00, m01, m02 = xa.x, ya.x, za.x
    m10, m11, m12 = xa.y, ya.y, za.y
    m20, m21, m22 = xa.z, ya.z, za.z
    tr = m00 + m11 + m22
    if tr > 0.0:
        s = math.sqrt(tr + 1.0) * 2.0
        return Quaternion(0.25 * s, (m21 - m12) / s, (m02 - m20) / s, (m10 - m01) / s)
    if m00 > m11 and m00 > m22:
        s = math.sqrt(1.0 + m00 - m11 - m22) * 2.0
        return Quaternion((m21 - m12) / s, 0.25 * s, (m01 + m10) / s, (m02 + m20) / s)
    if m11 > m22:
        s = math.sqrt(1.0 + m11 - m00 - m22) * 2.0
        return Quaternion((m02 - m20) / s, (m01 + m10) / s, 0.25 * s, (m12 + m21) / s)
    s = math.sqrt(1.0 + m22 - m00 - m11) * 2.0
    return Quaternion((m10 - m01) / s, (m02 + m20) / s, (m12 + m21) / s, 0.25 * s)


def _yaw_reference(world_up: Vec3, prev: Quaternion | None) -> Vec3:
    """Horizontal right axis used when the view direction is (anti)parallel to up.

    Keeps the previous frame's yaw when one is supplied; otherwise yaw 0,
    i.e. a deterministic axis perpendicular to ``world_up``.
    """
    if prev is not None:
        prev_right = prev.rotate(Vec3(1.0, 0.0, 0.0))
        planar = prev_right - world_up.scaled(prev_right.dot(world_up))
        if planar.norm() > 1e-9:
            return planar.normalized()
    seed = Vec3(1.0, 0.0, 0.0) if abs(world_up.x) <= 0.9 else Vec3(0.0, 1.0, 0.0)
    return (seed - world_up.scaled(seed.dot(world_up))).normalized()


def billboard_rotation(
    anchor: Vec3,
    camera: Vec3,
    world_up: Vec3 = Vec3(0.0, 0.0, 1.0),
    prev: Quaternion | None = None,
) -> Quaternion:
    """Roll-free orientation turning a board at ``anchor`` toward ``camera``.

    The returned rotation maps the body axes to world space with +z (the
    board normal) pointing at the camera and +x (the text direction) kept
    perpendicular to ``world_up``, so the board never banks.
    """
    if abs(world_up.norm() - 1.0) > 1e-6:
        raise InvalidParameterError("world_up must be unit length")
    d = camera - anchor
    dist = d.norm()
    if dist < DEGENERATE_DISTANCE_M:
        raise DegenerateViewError("camera coincides with the billboard anchor")
    fwd = d.scaled(1.0 / dist)
    if fwd.cross(world_up).norm() < VERTICAL_FALLBACK_RAD:
        right = _yaw_reference(world_up, prev)
    else:
        right = world_up.cross(fwd).normalized()
    up = fwd.cross(right)
    return _quat_from_basis(right, up, fwd)


def slerp(a: Quaternion, b: Quaternion, u: float) -> Quaternion:
    """Shortest-arc spherical interpolation; exact at u=0 and u=1."""
    if u <= 0.0:
        return a
    if u >= 1.0:
        return b
    d = a.dot(b)
    bw, bx, by, bz = b.w, b.x, b.y, b.z
    if d < 0.0:
        d, bw, bx, by, bz = -d, -bw, -bx, -by, -bz
    if d > 1.0 - 1e-12:
        # Nearly identical: linear blend, renormalized by the constructor.
        return Quaternion(
            a.w + (bw - a.w) * u,
            a.x + (bx - a.x) * u,
            a.y + (by - a.y) * u,
            a.z + (bz - a.z) * u,
        )
    theta = math.acos(min(1.0, d))
    s = math.sin(theta)
    ka = math.sin((1.0 - u) * theta) / s
    kb = math.sin(u * theta) / s
    return Quaternion(
        ka * a.w + kb * bw, ka * a.x + kb * bx, ka * a.y + kb * by, ka * a.z + kb * bz
    )


def interpolate_pose(
    a: CameraPose, b: CameraPose, t: float, easing: Easing = DEFAULT_EASING
) -> CameraPose:
    """Blend two camera poses at parameter ``t`` in [0, 1] after easing."""
    if not isinstance(t, (int, float)) or isinstance(t, bool) or not 0.0 <= t <= 1.0:
        raise ParameterRangeError(f"interpolation parameter {t!r} outside [0, 1]")
    u = easing.apply(float(t))
    pos = Vec3(
        a.position.x + (b.position.x - a.position.x) * u,
        a.position.y + (b.position.y - a.position.y) * u,
        a.position.z + (b.position.z - a.position.z) * u,
    )
    return CameraPose(pos, slerp(a.orientation, b.orientation, u))


def _check_pose(label: str, pose: CameraPose) -> None:
    p, q = pose.position, pose.orientation
    for v in (p.x, p.y, p.z, q.w, q.x, q.y, q.z):
        if not math.isfinite(v):
            raise InvalidPoseError(f"{label}: non-finite pose component {v!r}")


@dataclass(frozen=True)
class TravelPlan:
    """A timed camera move; ``sample(t)`` expects progress t in [0, 1]."""

    start: CameraPose
    end: CameraPose
    duration_s: float
    easing: Easing = DEFAULT_EASING

    def sample(self, t: float) -> CameraPose:
        return interpolate_pose(self.start, self.end, t, self.easing)


def travel_plan(
    a: CameraPose,
    b: CameraPose,
    speed_mps: float = DEFAULT_SPEED_MPS,
    min_duration_s: float = DEFAULT_MIN_DURATION_S,
    easing: Easing = DEFAULT_EASING,
) -> TravelPlan:
    """Plan a smooth move from ``a`` to ``b`` at roughly ``speed_mps``.

    Short hops are stretched to ``min_duration_s`` so the viewer can keep
    track of where the camera went.
    """
    if not (math.isfinite(speed_mps) and speed_mps > 0.0):
        raise InvalidParameterError(f"speed_mps must be positive, got {speed_mps!r}")
    if not (math.isfinite(min_duration_s) and min_duration_s > 0.0):
        raise InvalidParameterError(
            f"min_duration_s must be positive, got {min_duration_s!r}"
        )
    _check_pose("travel start", a)
    _check_pose("travel end", b)
    dist = (b.position - a.position).norm()
    return TravelPlan(a, b, max(min_duration_s, dist / speed_mps), easing)
