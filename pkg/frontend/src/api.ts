/** Typed client for the clusterkit session API. The client performs no
 * algebra: every polynomial string displayed anywhere comes verbatim from
 * these responses. */

export interface QuiverJson {
  n: number;
  m: number;
  arrows: [number, number, number][];
}

export interface SessionStateJson {
  id: string;
  mode: "seed" | "yseed";
  n: number;
  m: number;
  quiver: QuiverJson | null;
  matrix: number[][];
  cluster?: string[];
  frozen?: string[];
  y?: string[];
  history: number[];
  returns_to_initial_up_to_relabeling: boolean;
}

export interface ExchangeGraphJson {
  exceeded: boolean;
  vertices?: number;
  edges?: number;
  graph?: { vertices: string[][]; edges: [number, number][] };
}

export class ApiError extends Error {
  constructor(readonly status: number, message: string) {
    super(message);
  }
}

async function parseOrThrow<T>(resp: Response): Promise<T> {
  const body = await resp.json().catch(() => ({}));
  if (!resp.ok) {
    const message =
      typeof body === "object" && body !== null && "error" in body
        ? String((body as { error: unknown }).error)
        : `HTTP ${resp.status}`;
    throw new ApiError(resp.status, message);
  }
  return body as T;
}

export class SessionApi {
  constructor(readonly baseUrl: string = "") {}

  private url(path: string): string {
    return `${this.baseUrl}${path}`;
  }

  async createSession(body: unknown): Promise<string> {
    const resp = await fetch(this.url("/sessions"), {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
    });
    const created = await parseOrThrow<{ id: string }>(resp);
    return created.id;
  }

  async getState(id: string): Promise<SessionStateJson> {
    const resp = await fetch(this.url(`/sessions/${id}`));
    return parseOrThrow<SessionStateJson>(resp);
  }

  async mutate(id: string, vertex: number): Promise<SessionStateJson> {
    const resp = await fetch(this.url(`/sessions/${id}/mutate`), {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ vertex }),
    });
    return parseOrThrow<SessionStateJson>(resp);
  }

  async undo(id: string): Promise<SessionStateJson> {
    const resp = await fetch(this.url(`/sessions/${id}/undo`), {
      method: "POST",
    });
    return parseOrThrow<SessionStateJson>(resp);
  }

  async exchangeGraph(id: string, budget: number): Promise<ExchangeGraphJson> {
    const resp = await fetch(
      this.url(`/sessions/${id}/exchange-graph?budget=${budget}`),
    );
    return parseOrThrow<ExchangeGraphJson>(resp);
  }
}
