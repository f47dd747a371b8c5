/**
 * Scene-space math matching the service's conventions: x east, y north,
 * z up. Billboards map body +z toward the camera and keep body +x
 * perpendicular to world up so text never banks.
 */

import type { CameraPoseJson, QuaternionJson, Vec3Json } from "./types.js";

export const WORLD_UP: Vec3Json = { x: 0, y: 0, z: 1 };

export function vec3(x: number, y: number, z: number): Vec3Json {
  return { x, y, z };
}

export function add(a: Vec3Json, b: Vec3Json): Vec3Json {
  return { x: a.x + b.x, y: a.y + b.y, z: a.z + b.z };
}

export function sub(a: Vec3Json, b: Vec3Json): Vec3Json {
  return { x: a.x - b.x, y: a.y - b.y, z: a.z - b.z };
}

export function scale(v: Vec3Json, k: number): Vec3Json {
  return { x: v.x * k, y: v.y * k, z: v.z * k };
}

export function dot(a: Vec3Json, b: Vec3Json): number {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}

export function cross(a: Vec3Json, b: Vec3Json): Vec3Json {
  return {
    x: a.y * b.z - a.z * b.y,
    y: a.z * b.x - a.x * b.z,
    z: a.x * b.y - a.y * b.x,
  };
}

export function norm(v: Vec3Json): number {
  return Math.sqrt(dot(v, v));
}

export function normalize(v: Vec3Json): Vec3Json {
  const n = norm(v);
  if (n === 0) throw new Error("cannot normalize a zero vector");
  return scale(v, 1 / n);
}

export function quatNormalize(q: QuaternionJson): QuaternionJson {
  const n = Math.sqrt(q.w * q.w + q.x * q.x + q.y * q.y + q.z * q.z);
  if (n === 0) throw new Error("zero-norm quaternion");
  return { w: q.w / n, x: q.x / n, y: q.y / n, z: q.z / n };
}

export function quatRotate(q: QuaternionJson, v: Vec3Json): Vec3Json {
  const u = { x: q.x, y: q.y, z: q.z };
  const uv = cross(u, v);
  const uuv = cross(u, uv);
  return {
    x: v.x + 2 * (q.w * uv.x + uuv.x),
    y: v.y + 2 * (q.w * uv.y + uuv.y),
    z: v.z + 2 * (q.w * uv.z + uuv.z),
  };
}

export function quatDot(a: QuaternionJson, b: QuaternionJson): number {
  return a.w * b.w + a.x * b.x + a.y * b.y + a.z * b.z;
}

/** Shortest-arc spherical interpolation; exact at u=0 and u=1. */
export function slerp(a: QuaternionJson, b: QuaternionJson, u: number): QuaternionJson {
  if (u <= 0) return a;
  if (u >= 1) return b;
  let d = quatDot(a, b);
  let { w: bw, x: bx, y: by, z: bz } = b;
  if (d < 0) {
    d = -d;
    bw = -bw;
    bx = -bx;
    by = -by;
    bz = -bz;
  }
  if (d > 1 - 1e-12) {
    return quatNormalize({
      w: a.w + (bw - a.w) * u,
      x: a.x + (bx - a.x) * u,
      y: a.y + (by - a.y) * u,
      z: a.z + (bz - a.z) * u,
    });
  }
  const theta = Math.acos(Math.min(1, d));
  const s = Math.sin(theta);
  const ka = Math.sin((1 - u) * theta) / s;
  const kb = Math.sin(u * theta) / s;
  return quatNormalize({
    w: ka * a.w + kb * bw,
    x: ka * a.x + kb * bx,
    y: ka * a.y + kb * by,
    z: ka * a.z + kb * bz,
  });
}

function quatFromBasis(xa: Vec3Json, ya: Vec3Json, za: Vec3Json): QuaternionJson {
  const m00 = xa.x, m01 = ya.x, m02 = za.x;
  const m10 = xa.y, m11 = ya.y, m12 = za.y;
  const m20 = xa.z, m21 = ya.z, m22 = za.z;
  const tr = m00 + m11 + m22;
  let q: QuaternionJson;
  if (tr > 0) {
    const s = Math.sqrt(tr + 1) * 2;
    q = { w: 0.25 * s, x: (m21 - m12) / s, y: (m02 - m20) / s, z: (m10 - m01) / s };
  } else if (m00 > m11 && m00 > m22) {
    const s = Math.sqrt(1 + m00 - m11 - m22) * 2;
    q = { w: (m21 - m12) / s, x: 0.25 * s, y: (m01 + m10) / s, z: (m02 + m20) / s };
  } else if (m11 > m22) {
    const s = Math.sqrt(1 + m11 - m00 - m22) * 2;
    q = { w: (m02 - m20) / s, x: (m01 + m10) / s, y: 0.25 * s, z: (m12 + m21) / s };
  } else {
    const s = Math.sqrt(1 + m22 - m00 - m11) * 2;
    q = { w: (m10 - m01) / s, x: (m02 + m20) / s, y: (m12 + m21) / s, z: 0.25 * s };
  }
  return quatNormalize(q);
}

/**
 * Roll-free orientation turning a board at `anchor` toward `camera`;
 * same convention as the service's scene math.
 */
export function billboardRotation(
  anchor: Vec3Json,
  camera: Vec3Json,
  worldUp: Vec3Json = WORLD_UP,
): QuaternionJson {
  const d = sub(camera, anchor);
  const dist = norm(d);
  if (dist < 1e-9) throw new Error("camera coincides with the billboard anchor");
  const fwd = scale(d, 1 / dist);
  let right: Vec3Json;
  if (norm(cross(fwd, worldUp)) < 1e-6) {
    right = vec3(1, 0, 0); // looking straight up or down: yaw 0
  } else {
    right = normalize(cross(worldUp, fwd));
  }
  const up = cross(fwd, right);
  return quatFromBasis(right, up, fwd);
}

export type EasingKind = "linear" | "smoothstep" | "smootherstep";

export function ease(kind: EasingKind, t: number): number {
  if (kind === "linear") return t;
  if (kind === "smoothstep") return t * t * (3 - 2 * t);
  return t * t * t * (t * (6 * t - 15) + 10);
}

export function lerpPose(a: CameraPoseJson, b: CameraPoseJson, u: number): CameraPoseJson {
  return {
    position: {
      x: a.position.x + (b.position.x - a.position.x) * u,
      y: a.position.y + (b.position.y - a.position.y) * u,
      z: a.position.z + (b.position.z - a.position.z) * u,
    },
    orientation: slerp(a.orientation, b.orientation, u),
  };
}
