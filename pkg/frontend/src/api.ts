/** Thin typed client for the endgame service; no rules logic lives here. */

import type {
  ActionJson,
  AnalysisJson,
  Color,
  HintJson,
  SessionView,
  StateJson,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    public readonly status: number,
    message: string,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  private readonly fetchFn: FetchLike;

  constructor(
    private readonly baseUrl: string,
    fetchFn?: FetchLike,
  ) {
    this.fetchFn = fetchFn ?? ((input, init) => fetch(input, init));
  }

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchFn(`${this.baseUrl}${path}`, init);
    const body = await response.json().catch(() => ({}));
    if (!response.ok) {
      const message =
        typeof body === "object" && body !== null && "error" in body
          ? String((body as { error: unknown }).error)
          : `request failed with status ${response.status}`;
      throw new ApiError(response.status, message);
    }
    return body as T;
  }

  createSession(
    state: StateJson,
    human: Color,
    enginePolicy = "s",
  ): Promise<SessionView> {
    return this.request<SessionView>("/sessions", {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ state, human, engine_policy: enginePolicy }),
    });
  }

  getSession(sessionId: string): Promise<SessionView> {
    return this.request<SessionView>(`/sessions/${sessionId}`);
  }

  submitAction(sessionId: string, action: ActionJson): Promise<SessionView> {
    return this.request<SessionView>(`/sessions/${sessionId}/actions`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ action }),
    });
  }

  getHint(sessionId: string): Promise<HintJson> {
    return this.request<HintJson>(`/sessions/${sessionId}/hint`);
  }

  analyze(state: StateJson): Promise<AnalysisJson> {
    const encoded = encodeURIComponent(JSON.stringify(state));
    return this.request<AnalysisJson>(`/analyze?state=${encoded}`);
  }
}
