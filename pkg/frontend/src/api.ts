/**
 * Typed client for the scene service HTTP API. This is the only channel
 * between the viewer and the backend: all guidance decisions happen
 * server-side, the viewer just renders what the session says.
 */

import type {
  SceneJson,
  ServiceErrorJson,
  SessionCreatedJson,
  SessionStateJson,
  ViewRecordedJson,
} from "./types.js";

export class ServiceError extends Error {
  constructor(
    readonly status: number,
    readonly body: ServiceErrorJson,
  ) {
    super(`${body.code}: ${body.message}`);
  }
}

async function parseError(res: Response): Promise<ServiceError> {
  let body: ServiceErrorJson;
  try {
    body = (await res.json()) as ServiceErrorJson;
  } catch {
    body = { code: "http_error", message: res.statusText || `status ${res.status}` };
  }
  return new ServiceError(res.status, body);
}

export class SceneServiceClient {
  readonly baseUrl: string;

  constructor(
    baseUrl: string,
    private readonly fetchImpl: typeof fetch = fetch,
  ) {
    this.baseUrl = baseUrl.replace(/\/+$/, "");
  }

  /** Startup reachability probe; the viewer shows an error screen when this fails. */
  async probe(sceneId: string): Promise<boolean> {
    try {
      const res = await this.fetchImpl(`${this.baseUrl}/scenes/${encodeURIComponent(sceneId)}`);
      return res.ok;
    } catch {
      return false;
    }
  }

  async getScene(sceneId: string): Promise<SceneJson> {
    const res = await this.fetchImpl(`${this.baseUrl}/scenes/${encodeURIComponent(sceneId)}`);
    if (!res.ok) throw await parseError(res);
    return (await res.json()) as SceneJson;
  }

  async createSession(sceneId: string, mode?: string): Promise<SessionCreatedJson> {
    const res = await this.fetchImpl(
      `${this.baseUrl}/scenes/${encodeURIComponent(sceneId)}/sessions`,
      {
        method: "POST",
        headers: { "content-type": "application/json" },
        body: JSON.stringify(mode ? { mode } : {}),
      },
    );
    if (!res.ok) throw await parseError(res);
    return (await res.json()) as SessionCreatedJson;
  }

  async recordView(sessionId: string, documentId: string): Promise<ViewRecordedJson> {
    const res = await this.fetchImpl(
      `${this.baseUrl}/sessions/${encodeURIComponent(sessionId)}/views`,
      {
        method: "POST",
        headers: { "content-type": "application/json" },
        body: JSON.stringify({ document_id: documentId }),
      },
    );
    if (!res.ok) throw await parseError(res);
    return (await res.json()) as ViewRecordedJson;
  }

  async getSession(sessionId: string): Promise<SessionStateJson> {
    const res = await this.fetchImpl(
      `${this.baseUrl}/sessions/${encodeURIComponent(sessionId)}`,
    );
    if (!res.ok) throw await parseError(res);
    return (await res.json()) as SessionStateJson;
  }

  /** URL the browser loads media elements and iframes from. */
  documentContentUrl(documentId: string): string {
    return `${this.baseUrl}/documents/${encodeURIComponent(documentId)}/content`;
  }
}
