import type {
  Analysis,
  AutoState,
  GraphDocument,
  SessionState,
} from "./types";

// Server errors carry {code, detail}; keep both so the UI can route the
// message to the right field by code.
export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    readonly detail: string,
  ) {
    super(`${code}: ${detail}`);
  }
}

export interface AutoOptions {
  strategy?: "first_legal" | "random";
  max_steps?: number;
  seed?: number;
}

export class GameClient {
  constructor(
    private baseUrl: string,
    private fetchFn: typeof fetch = (input, init) =>
      globalThis.fetch(input, init),
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchFn(`${this.baseUrl}${path}`, {
      headers: { "Content-Type": "application/json" },
      ...init,
    });
    if (!response.ok) {
      let code = `Http${response.status}`;
      let detail = response.statusText;
      try {
        const body = await response.json();
        if (body && body.code) {
          code = body.code;
          detail = body.detail;
        }
      } catch {
        // non-JSON error body; keep the status text
      }
      throw new ApiError(response.status, code, detail);
    }
    return (await response.json()) as T;
  }

  health(): Promise<{ status: string }> {
    return this.request("/api/health");
  }

  createSession(
    graph: GraphDocument,
    position: string[],
  ): Promise<{ id: string; state: SessionState }> {
    return this.request("/api/sessions", {
      method: "POST",
      body: JSON.stringify({ graph, position }),
    });
  }

  getState(sessionId: string): Promise<SessionState> {
    return this.request(`/api/sessions/${sessionId}`);
  }

  fire(sessionId: string, node: number): Promise<SessionState> {
    return this.request(`/api/sessions/${sessionId}/fire`, {
      method: "POST",
      body: JSON.stringify({ node }),
    });
  }

  undo(sessionId: string): Promise<SessionState> {
    return this.request(`/api/sessions/${sessionId}/undo`, {
      method: "POST",
      body: JSON.stringify({}),
    });
  }

  auto(sessionId: string, options: AutoOptions = {}): Promise<AutoState> {
    return this.request(`/api/sessions/${sessionId}/auto`, {
      method: "POST",
      body: JSON.stringify(options),
    });
  }

  analyze(graph: GraphDocument): Promise<Analysis> {
    return this.request("/api/analyze", {
      method: "POST",
      body: JSON.stringify({ graph }),
    });
  }
}
