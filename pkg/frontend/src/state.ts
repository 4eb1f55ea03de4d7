import { ApiClient, ApiRequestError } from "./api.js";
import type { ArcInfo, GraphView, InitialSpec, SessionView } from "./types.js";

export interface ViewState {
  sessionId: string | null;
  kind: "gon" | "cluster" | "path";
  arcs: ArcInfo[];
  svg: string;
  /** Canonical serialization of the last server state (replay anchor). */
  stateJson: string | null;
  historyDepth: number;
  t: number;
  /** Arc whose last click came back 409, shown as the frozen indicator. */
  frozenArcId: string | null;
  lastError: string | null;
  graph: GraphView | null;
}

export function initialViewState(): ViewState {
  return {
    sessionId: null,
    kind: "gon",
    arcs: [],
    svg: "",
    stateJson: null,
    historyDepth: 0,
    t: 0,
    frozenArcId: null,
    lastError: null,
    graph: null,
  };
}

function canonical(value: unknown): string {
  const sort = (v: unknown): unknown => {
    if (Array.isArray(v)) return v.map(sort);
    if (v && typeof v === "object") {
      return Object.fromEntries(
        Object.keys(v as Record<string, unknown>)
          .sort()
          .map((k) => [k, sort((v as Record<string, unknown>)[k])]),
      );
    }
    return v;
  };
  return JSON.stringify(sort(value));
}

type Listener = (state: ViewState) => void;

/**
 * The explorer's single source of truth. Every field of the view state is
 * copied from a server response; the controller performs no mathematics and
 * no optimistic updates.
 */
export class Explorer {
  state: ViewState = initialViewState();
  private listeners: Listener[] = [];

  constructor(private api: ApiClient) {}

  subscribe(listener: Listener): void {
    this.listeners.push(listener);
  }

  private emit(): void {
    for (const listener of this.listeners) listener(this.state);
  }

  private absorb(view: SessionView, extra: Partial<ViewState> = {}): void {
    this.state = {
      ...this.state,
      arcs: view.arcs,
      svg: view.svg,
      stateJson: view.state === undefined ? this.state.stateJson : canonical(view.state),
      t: view.t ?? this.state.t,
      lastError: null,
      ...extra,
    };
    this.emit();
  }

  async start(initial: InitialSpec): Promise<void> {
    const created = await this.api.createSession(initial);
    this.state = {
      ...initialViewState(),
      sessionId: created.id,
      kind: initial.type === "path" ? "path" : initial.type === "cluster" ? "cluster" : "gon",
    };
    this.absorb(created);
    if (initial.type === "polygon") {
      const graph = await this.api.graph(created.id);
      this.state = { ...this.state, graph };
      this.emit();
    }
  }

  /** Click-to-mutate. A frozen arc surfaces the 409 as an indicator. */
  async clickArc(arcId: string): Promise<void> {
    if (!this.state.sessionId) return;
    try {
      const view = await this.api.mutate(this.state.sessionId, arcId);
      this.absorb(view, {
        historyDepth: this.state.historyDepth + 1,
        frozenArcId: null,
      });
      if (this.state.graph) {
        const graph = await this.api.graph(this.state.sessionId);
        this.state = { ...this.state, graph };
        this.emit();
      }
    } catch (err) {
      if (err instanceof ApiRequestError && err.status === 409) {
        this.state = { ...this.state, frozenArcId: arcId, lastError: err.message };
        this.emit();
        return;
      }
      throw err;
    }
  }

  /** Slider scrub on a path session. */
  async scrub(t: number): Promise<void> {
    if (!this.state.sessionId) return;
    const view = await this.api.seek(this.state.sessionId, t);
    this.absorb(view, { t, historyDepth: this.state.historyDepth + 1 });
  }

  async undo(): Promise<void> {
    if (!this.state.sessionId || this.state.historyDepth === 0) return;
    const view = await this.api.undo(this.state.sessionId);
    this.absorb(view, {
      historyDepth: this.state.historyDepth - 1,
      frozenArcId: null,
    });
    if (this.state.graph) {
      const graph = await this.api.graph(this.state.sessionId);
      this.state = { ...this.state, graph };
      this.emit();
    }
  }
}
