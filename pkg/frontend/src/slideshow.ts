/**
 * Slideshow plane: an ordered media sequence projected on a fixed quad,
 * flat on the ground or standing upright. Stepping wraps at both ends;
 * dropped files append to the media list locally so a presenter can
 * improvise layers during a session.
 */

import { add, scale, sub, vec3 } from "./math.js";
import type { SlideshowJson, Vec3Json } from "./types.js";

const DROPPABLE_PATTERN = /\.(jpe?g|png|webp|bmp|gif|apng|mp4|webm|mov)$/i;

export interface SlideshowQuad {
  corners: [Vec3Json, Vec3Json, Vec3Json, Vec3Json];
  normal: Vec3Json;
}

/**
 * World-space corners, counterclockwise seen from the quad's normal.
 * Heading 0 aligns the width axis east; horizontal planes face up,
 * vertical planes face north at heading 0, rotating counterclockwise
 * seen from above. Matches the service's plane convention.
 */
export function slideshowQuad(show: SlideshowJson): SlideshowQuad {
  const h = (show.heading_deg * Math.PI) / 180;
  const widthAxis = vec3(Math.cos(h), Math.sin(h), 0);
  let a1: Vec3Json;
  let a2: Vec3Json;
  let normal: Vec3Json;
  if (show.orientation === "horizontal") {
    a1 = scale(widthAxis, show.size.width_m / 2);
    a2 = scale(vec3(-Math.sin(h), Math.cos(h), 0), show.size.height_m / 2);
    normal = vec3(0, 0, 1);
  } else {
    a1 = scale(vec3(0, 0, 1), show.size.height_m / 2);
    a2 = scale(widthAxis, show.size.width_m / 2);
    normal = vec3(-Math.sin(h), Math.cos(h), 0);
  }
  const c = show.center;
  return {
    corners: [
      sub(sub(c, a1), a2),
      sub(add(c, a1), a2),
      add(add(c, a1), a2),
      add(sub(c, a1), a2),
    ],
    normal,
  };
}

export function stepSlideshow(show: SlideshowJson, delta: number): SlideshowJson {
  if (show.media.length === 0) throw new Error(`slideshow ${show.entity_id} has no media`);
  const n = show.media.length;
  return { ...show, current_index: ((show.current_index + delta) % n + n) % n };
}

export function currentMedia(show: SlideshowJson): string {
  if (show.media.length === 0) throw new Error(`slideshow ${show.entity_id} has no media`);
  return show.media[show.current_index]!;
}

export type DropOutcome =
  | { kind: "appended"; show: SlideshowJson; documentId: string }
  | { kind: "rejected"; toast: string };

/**
 * Handle a file dropped onto the plane: supported image/video files are
 * appended to the media list (as a locally registered document id);
 * anything else produces a toast message and no state change.
 */
export function dropMedia(show: SlideshowJson, fileName: string, documentId: string): DropOutcome {
  if (!DROPPABLE_PATTERN.test(fileName)) {
    return { kind: "rejected", toast: `cannot project ${fileName}: drop an image or a video` };
  }
  return {
    kind: "appended",
    show: { ...show, media: [...show.media, documentId] },
    documentId,
  };
}
