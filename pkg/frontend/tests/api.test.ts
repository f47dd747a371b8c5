import { describe, expect, it } from "vitest";

import { SceneServiceClient, ServiceError } from "../src/api.js";

// Payload shapes recorded from the running service.
const SESSION_CREATED = {
  session_id: "QNngeDBYFa1Ar5WGnQKCfQ",
  scene_id: "imported-episodes",
  mode: "conditional",
  viewed: [],
  available: ["episode-1-content-1", "episode-1-content-2"],
};

const LOCKED_ERROR = {
  code: "locked_content",
  message: "document 'episode-2-content-1' is locked",
  document_id: "episode-2-content-1",
};

function fakeFetch(routes: Record<string, { status: number; body: unknown }>): typeof fetch {
  return async (input: RequestInfo | URL, init?: RequestInit) => {
    const url = String(input);
    const method = init?.method ?? "GET";
    const hit = routes[`${method} ${url}`];
    if (!hit) return new Response("not found", { status: 404 });
    return new Response(JSON.stringify(hit.body), {
      status: hit.status,
      headers: { "content-type": "application/json" },
    });
  };
}

describe("SceneServiceClient", () => {
  it("creates sessions and returns the availability list", async () => {
    const client = new SceneServiceClient(
      "http://svc",
      fakeFetch({
        "POST http://svc/scenes/imported-episodes/sessions": {
          status: 201,
          body: SESSION_CREATED,
        },
      }),
    );
    const session = await client.createSession("imported-episodes", "conditional");
    expect(session.session_id).toBe("QNngeDBYFa1Ar5WGnQKCfQ");
    expect(session.available).toEqual(["episode-1-content-1", "episode-1-content-2"]);
  });

  it("surfaces locked content as a typed error with the document id", async () => {
    const client = new SceneServiceClient(
      "http://svc",
      fakeFetch({
        "POST http://svc/sessions/s1/views": { status: 409, body: LOCKED_ERROR },
      }),
    );
    await expect(client.recordView("s1", "episode-2-content-1")).rejects.toSatisfy((err) => {
      expect(err).toBeInstanceOf(ServiceError);
      const e = err as ServiceError;
      expect(e.status).toBe(409);
      expect(e.body.code).toBe("locked_content");
      expect(e.body.document_id).toBe("episode-2-content-1");
      return true;
    });
  });

  it("probe returns false when the service is unreachable", async () => {
    const failing: typeof fetch = async () => {
      throw new TypeError("fetch failed");
    };
    const client = new SceneServiceClient("http://svc", failing);
    expect(await client.probe("any")).toBe(false);
  });

  it("builds content URLs off the base url", () => {
    const client = new SceneServiceClient("http://svc:8000///");
    expect(client.documentContentUrl("doc a")).toBe("http://svc:8000/documents/doc%20a/content");
  });
});
