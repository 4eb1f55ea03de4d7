// Payload shapes of the session service. The UI never computes mathematics:
// every rendered state is one of these server responses held verbatim.

export interface ArcInfo {
  id: string;
  mutable: boolean;
  /** Server-computed hit-region coordinates (shape depends on the layout). */
  coords?: Record<string, number>;
}

export interface SessionView {
  arcs: ArcInfo[];
  svg: string;
  state?: unknown;
  t?: number;
}

export interface CreateResponse extends SessionView {
  id: string;
}

export interface MutateResponse extends SessionView {
  replaced: string;
  by: string;
}

export interface GraphView {
  nodes: string[];
  edges: [number, number][];
  current: string;
  count: number;
}

export interface ApiError {
  status: number;
  error: string;
}

export type InitialSpec =
  | { type: "polygon"; n: number; diagonals?: [number, number][] }
  | { type: "gon"; state: unknown }
  | { type: "cluster"; preset: string }
  | { type: "path"; preset?: string; epsilon?: number };
