/**
 * Dual-renderer compositing for in-world web boards.
 *
 * The document layer (an interactive page) renders BEHIND the 3D canvas;
 * the 3D pass draws a cutout quad at the board that writes alpha 0, so the
 * page shows through exactly there. Opaque scene geometry in front of the
 * board still wins: the cutout is depth-tested like everything else.
 *
 * The geometry and pixel rules live here as pure functions so they can be
 * exercised headlessly; the renderer shell applies them to the real canvas.
 */

import {
  add,
  billboardRotation,
  dot,
  normalize,
  quatRotate,
  scale,
  sub,
  vec3,
  WORLD_UP,
} from "./math.js";
import type { Vec3Json, WebBoardJson } from "./types.js";

export interface Quad {
  /** Corners in counterclockwise order seen from the facing side. */
  corners: [Vec3Json, Vec3Json, Vec3Json, Vec3Json];
  normal: Vec3Json;
}

/** World-space quad of a board re-faced toward the camera. */
export function boardQuad(board: WebBoardJson, camera: Vec3Json): Quad {
  const q = billboardRotation(board.anchor, camera, WORLD_UP);
  const right = scale(quatRotate(q, vec3(1, 0, 0)), board.size.width_m / 2);
  const up = scale(quatRotate(q, vec3(0, 1, 0)), board.size.height_m / 2);
  const c = board.anchor;
  return {
    corners: [
      sub(sub(c, right), up),
      sub(add(c, right), up),
      add(add(c, right), up),
      add(sub(c, right), up),
    ],
    normal: quatRotate(q, vec3(0, 0, 1)),
  };
}

export interface Ray {
  origin: Vec3Json;
  direction: Vec3Json;
}

export function rayThrough(camera: Vec3Json, target: Vec3Json): Ray {
  return { origin: camera, direction: normalize(sub(target, camera)) };
}

/** Distance along the ray to the quad, or null when it misses. */
export function rayQuadDistance(ray: Ray, quad: Quad): number | null {
  const [a, b, , d] = quad.corners;
  const denom = dot(ray.direction, quad.normal);
  if (Math.abs(denom) < 1e-12) return null;
  const t = dot(sub(a, ray.origin), quad.normal) / denom;
  if (t <= 0) return null;
  const p = add(ray.origin, scale(ray.direction, t));
  const edgeR = sub(b, a);
  const edgeU = sub(d, a);
  const rel = sub(p, a);
  const u = dot(rel, edgeR) / dot(edgeR, edgeR);
  const v = dot(rel, edgeU) / dot(edgeU, edgeU);
  if (u < 0 || u > 1 || v < 0 || v > 1) return null;
  return t;
}

/** Axis-aligned box used for opaque scene geometry in hit tests. */
export interface Box {
  min: Vec3Json;
  max: Vec3Json;
}

export function rayBoxDistance(ray: Ray, box: Box): number | null {
  let tNear = -Infinity;
  let tFar = Infinity;
  for (const axis of ["x", "y", "z"] as const) {
    const o = ray.origin[axis];
    const dir = ray.direction[axis];
    if (Math.abs(dir) < 1e-12) {
      if (o < box.min[axis] || o > box.max[axis]) return null;
      continue;
    }
    let t0 = (box.min[axis] - o) / dir;
    let t1 = (box.max[axis] - o) / dir;
    if (t0 > t1) [t0, t1] = [t1, t0];
    tNear = Math.max(tNear, t0);
    tFar = Math.min(tFar, t1);
    if (tNear > tFar) return null;
  }
  if (tFar <= 0) return null;
  return Math.max(tNear, 0);
}

/**
 * Can the user interact with the board from this camera position?
 * Opaque geometry between the camera and the board blocks the hit.
 */
export function hitTestBoard(
  board: WebBoardJson,
  camera: Vec3Json,
  occluders: Box[],
  target: Vec3Json = board.anchor,
): boolean {
  const quad = boardQuad(board, camera);
  const ray = rayThrough(camera, target);
  const boardT = rayQuadDistance(ray, quad);
  if (boardT === null) return false;
  for (const box of occluders) {
    const t = rayBoxDistance(ray, box);
    if (t !== null && t < boardT - 1e-9) return false;
  }
  return true;
}

export interface Rgba {
  r: number;
  g: number;
  b: number;
  /** 0 = fully transparent; the cutout writes exactly 0. */
  a: number;
}

/** Fragment the 3D pass produced at one pixel. */
export type SceneFragment =
  | { kind: "opaque"; color: Rgba }
  | { kind: "cutout" }
  | { kind: "background" };

/**
 * Final pixel of the dual-renderer stack: page layer behind, 3D in front.
 * An opaque 3D fragment always wins; the cutout lets the page through
 * untouched; elsewhere the background shows.
 */
export function compositePixel(
  fragment: SceneFragment,
  pageColor: Rgba,
  backgroundColor: Rgba,
): Rgba {
  if (fragment.kind === "opaque") return fragment.color;
  if (fragment.kind === "cutout") return pageColor;
  return backgroundColor;
}

/** Alpha the 3D pass writes at a pixel; the cutout region is exactly 0. */
export function sceneAlphaAt(fragment: SceneFragment): number {
  if (fragment.kind === "cutout") return 0;
  if (fragment.kind === "opaque") return 1;
  return 1;
}

/**
 * Extended-document overlay blend at one pixel: the media sits on top of
 * the rendered 3D view with a user-controlled opacity. Slider at 0 means
 * pure 3D; slider at 1 means pure document.
 */
export function overlayPixel(base: Rgba, overlay: Rgba, opacity: number): Rgba {
  const a = Math.min(1, Math.max(0, opacity));
  return {
    r: overlay.r * a + base.r * (1 - a),
    g: overlay.g * a + base.g * (1 - a),
    b: overlay.b * a + base.b * (1 - a),
    a: 1,
  };
}
