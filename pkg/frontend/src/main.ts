/** Entry point: read the viewer configuration and boot the scene. */

import { Viewer, type ViewerConfig } from "./viewer.js";

function configFromQuery(): ViewerConfig {
  const params = new URLSearchParams(window.location.search);
  return {
    serviceBaseUrl: params.get("service") ?? "http://127.0.0.1:8000",
    sceneId: params.get("scene") ?? "imported-episodes",
    mode: params.get("mode") ?? undefined,
    initialCamera: {
      position: { x: 0, y: -400, z: 250 },
      orientation: { w: 1, x: 0, y: 0, z: 0 },
    },
  };
}

const container = document.getElementById("viewer");
if (!container) throw new Error("missing #viewer container element");
void new Viewer(configFromQuery(), container).start();
