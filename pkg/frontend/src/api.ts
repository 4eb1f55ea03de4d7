import type {
  CreateResponse,
  GraphView,
  InitialSpec,
  MutateResponse,
  SessionView,
} from "./types.js";

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiRequestError extends Error {
  constructor(public status: number, message: string) {
    super(message);
  }
}

/**
 * Thin typed client over the session API. Requests for one session are
 * serialized: a call issued while another is in flight waits for it, so the
 * server always sees interactions in click order.
 */
export class ApiClient {
  private queue: Promise<unknown> = Promise.resolve();

  constructor(private base: string, private fetchImpl: FetchLike) {}

  private enqueue<T>(work: () => Promise<T>): Promise<T> {
    const next = this.queue.then(work, work);
    this.queue = next.catch(() => undefined);
    return next;
  }

  private async call<T>(method: string, path: string, body?: unknown): Promise<T> {
    const response = await this.fetchImpl(this.base + path, {
      method,
      headers: { "Content-Type": "application/json" },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    const payload = await response.json();
    if (!response.ok) {
      throw new ApiRequestError(response.status, (payload as { error?: string }).error ?? "request failed");
    }
    return payload as T;
  }

  createSession(initial: InitialSpec, quiver: unknown = "straight"): Promise<CreateResponse> {
    return this.enqueue(() => this.call("POST", "/sessions", { quiver, initial }));
  }

  cluster(sessionId: string): Promise<SessionView> {
    return this.enqueue(() => this.call("GET", `/sessions/${sessionId}/cluster`));
  }

  mutables(sessionId: string): Promise<{ mutable: string[] }> {
    return this.enqueue(() => this.call("GET", `/sessions/${sessionId}/mutables`));
  }

  mutate(sessionId: string, arcId: string): Promise<MutateResponse> {
    return this.enqueue(() => this.call("POST", `/sessions/${sessionId}/mutate`, { arcId }));
  }

  seek(sessionId: string, t: number): Promise<SessionView> {
    return this.enqueue(() => this.call("POST", `/sessions/${sessionId}/path/seek`, { t }));
  }

  undo(sessionId: string): Promise<SessionView> {
    return this.enqueue(() => this.call("POST", `/sessions/${sessionId}/undo`));
  }

  graph(sessionId: string): Promise<GraphView> {
    return this.enqueue(() => this.call("GET", `/sessions/${sessionId}/graph`));
  }

  /** Number of requests currently queued or running (for tests). */
  pending(): Promise<unknown> {
    return this.queue;
  }
}
