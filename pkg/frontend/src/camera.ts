/**
 * Smooth camera travel toward an extended document's configured pose.
 *
 * Mirrors the service's travel rule: duration is distance over speed with
 * a floor so short hops stay legible, smoothstep easing by default, and
 * sampling at t=1 returns the target pose exactly.
 */

import { ease, lerpPose, norm, sub, type EasingKind } from "./math.js";
import type { CameraPoseJson } from "./types.js";

export const DEFAULT_SPEED_MPS = 80;
export const DEFAULT_MIN_DURATION_S = 1.5;
export const DEFAULT_EASING: EasingKind = "smoothstep";

export interface TravelPlan {
  start: CameraPoseJson;
  end: CameraPoseJson;
  durationS: number;
  easing: EasingKind;
}

export function planTravel(
  start: CameraPoseJson,
  end: CameraPoseJson,
  speedMps: number = DEFAULT_SPEED_MPS,
  minDurationS: number = DEFAULT_MIN_DURATION_S,
  easing: EasingKind = DEFAULT_EASING,
): TravelPlan {
  if (!(speedMps > 0) || !(minDurationS > 0)) {
    throw new Error("speed and minimum duration must be positive");
  }
  const dist = norm(sub(end.position, start.position));
  return { start, end, durationS: Math.max(minDurationS, dist / speedMps), easing };
}

/** Pose at progress t in [0, 1]; endpoints are exact. */
export function samplePlan(plan: TravelPlan, t: number): CameraPoseJson {
  if (t <= 0) return plan.start;
  if (t >= 1) return plan.end;
  return lerpPose(plan.start, plan.end, ease(plan.easing, t));
}

export type TravelPhase = "travelling" | "arrived";

/**
 * Clock-driven animator: feed it elapsed seconds, read back the pose.
 * Once the duration elapses the pose is exactly the plan's end.
 */
export class CameraTravel {
  private elapsed = 0;

  constructor(readonly plan: TravelPlan) {}

  advance(dtSeconds: number): TravelPhase {
    this.elapsed = Math.min(this.plan.durationS, this.elapsed + dtSeconds);
    return this.elapsed >= this.plan.durationS ? "arrived" : "travelling";
  }

  pose(): CameraPoseJson {
    return samplePlan(this.plan, this.elapsed / this.plan.durationS);
  }
}
