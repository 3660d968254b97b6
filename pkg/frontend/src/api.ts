/** Typed client for the clustering session service. */

export interface DatasetMeta {
  data: string;
  n: number;
  n_features: number;
  feature_names: string[];
  default_n_super: number;
  default_seed: number;
  max_sessions: number;
}

export interface ProjectedPoint {
  id: number;
  xy: [number, number];
  super_instance: number;
}

export interface Projection {
  n_super: number;
  medoids: number[];
  points: ProjectedPoint[];
}

export interface InstanceView {
  id: number;
  features: number[];
  xy: [number, number];
}

export interface Progress {
  n_clusters: number | null;
  oracle_count: number;
}

export interface PendingView {
  state: string;
  seq?: number;
  a?: InstanceView;
  b?: InstanceView;
  progress: Progress;
  summary?: { oracle_count: number; n_clusters_found: number };
}

export interface SessionView {
  id: string;
  state: string;
  config: { n_super: number; seed: number };
  progress: Progress;
  result_available: boolean;
  error?: string;
}

export type Answer = "must-link" | "cannot-link";

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly detail: string,
  ) {
    super(`HTTP ${status}: ${detail}`);
  }
}

async function request<T>(
  base: string,
  path: string,
  init?: RequestInit,
): Promise<T> {
  const response = await fetch(base + path, init);
  if (!response.ok) {
    let detail = response.statusText;
    try {
      const body = await response.json();
      if (typeof body.detail === "string") detail = body.detail;
    } catch {
      // non-JSON error body, keep the status text
    }
    throw new ApiError(response.status, detail);
  }
  return (await response.json()) as T;
}

function post(body: unknown): RequestInit {
  return {
    method: "POST",
    headers: { "Content-Type": "application/json" },
    body: JSON.stringify(body),
  };
}

/** All methods throw ApiError on any non-2xx status. */
export class Client {
  constructor(readonly base: string = "") {}

  datasetMeta(): Promise<DatasetMeta> {
    return request(this.base, "/dataset/meta");
  }

  projection(sessionId?: string): Promise<Projection> {
    const query = sessionId ? `?session_id=${sessionId}` : "";
    return request(this.base, `/dataset/projection${query}`);
  }

  async createSession(config: {
    n_super?: number;
    seed?: number;
  }): Promise<string> {
    const body = await request<{ id: string }>(
      this.base,
      "/sessions",
      post(config),
    );
    return body.id;
  }

  session(id: string): Promise<SessionView> {
    return request(this.base, `/sessions/${id}`);
  }

  pending(id: string): Promise<PendingView> {
    return request(this.base, `/sessions/${id}/pending`);
  }

  answer(id: string, seq: number, answer: Answer): Promise<{ seq: number }> {
    return request(this.base, `/sessions/${id}/answer`, post({ seq, answer }));
  }

  cancel(id: string): Promise<{ state: string }> {
    return request(this.base, `/sessions/${id}/cancel`, post({}));
  }

  result(id: string): Promise<Record<string, unknown>> {
    return request(this.base, `/sessions/${id}/result`);
  }
}
