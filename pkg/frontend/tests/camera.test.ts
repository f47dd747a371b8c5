import { describe, expect, it } from "vitest";

import { CameraTravel, planTravel, samplePlan } from "../src/camera.js";
import { billboardRotation, vec3 } from "../src/math.js";
import type { CameraPoseJson } from "../src/types.js";

const START: CameraPoseJson = {
  position: { x: 0, y: 0, z: 50 },
  orientation: { w: 1, x: 0, y: 0, z: 0 },
};
const END: CameraPoseJson = {
  position: { x: 400, y: 150, z: 80 },
  orientation: billboardRotation(vec3(400, 150, 80), vec3(0, 0, 15)),
};

// Sample poses frozen from the backend travel planner (speed 80, floor
// 1.5 s, smoothstep) so both implementations drive the same path.
const BACKEND_DURATION = 5.353153276340964;
const BACKEND_SAMPLES: { t: number; pos: number[] }[] = [
  { t: 0.0, pos: [0.0, 0.0, 50.0] },
  { t: 0.25, pos: [62.5, 23.4375, 54.6875] },
  { t: 0.5, pos: [200.0, 75.0, 65.0] },
  { t: 0.75, pos: [337.5, 126.5625, 75.3125] },
  { t: 1.0, pos: [400.0, 150.0, 80.0] },
];

describe("planTravel", () => {
  it("matches the backend duration and path samples", () => {
    const plan = planTravel(START, END, 80, 1.5, "smoothstep");
    expect(plan.durationS).toBeCloseTo(BACKEND_DURATION, 12);
    for (const s of BACKEND_SAMPLES) {
      const pose = samplePlan(plan, s.t);
      expect(pose.position.x).toBeCloseTo(s.pos[0]!, 9);
      expect(pose.position.y).toBeCloseTo(s.pos[1]!, 9);
      expect(pose.position.z).toBeCloseTo(s.pos[2]!, 9);
    }
  });

  it("applies the minimum-duration floor", () => {
    const near: CameraPoseJson = {
      position: { x: 10, y: 0, z: 50 },
      orientation: { w: 1, x: 0, y: 0, z: 0 },
    };
    expect(planTravel(START, near, 80, 1.5).durationS).toBe(1.5);
  });

  it("ends exactly on the configured pose", () => {
    const plan = planTravel(START, END);
    const final = samplePlan(plan, 1);
    expect(final).toBe(plan.end);
    expect(final.position).toEqual(END.position);
    expect(final.orientation).toEqual(END.orientation);
  });

  it("rejects non-positive parameters", () => {
    expect(() => planTravel(START, END, 0)).toThrow();
    expect(() => planTravel(START, END, 80, -1)).toThrow();
  });
});

describe("CameraTravel", () => {
  it("arrives exactly at the end pose after the duration elapses", () => {
    const plan = planTravel(START, END);
    const travel = new CameraTravel(plan);
    let phase = travel.advance(plan.durationS / 3);
    expect(phase).toBe("travelling");
    phase = travel.advance(plan.durationS); // overshoot clamps
    expect(phase).toBe("arrived");
    expect(travel.pose()).toEqual(END);
  });

  it("holds the end pose on further ticks", () => {
    const plan = planTravel(START, END);
    const travel = new CameraTravel(plan);
    travel.advance(100);
    travel.advance(0.016);
    expect(travel.pose()).toEqual(END);
  });
});
