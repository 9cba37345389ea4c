/** Thin typed client for the session service.  No retries, no caching:
 * the store above it decides what a failure means.
 */

import {
  CreateResp,
  DeltaResp,
  ElementObj,
  ErrorResp,
  SeedObj,
  StateObj,
} from "./types.js";

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  constructor(
    public readonly status: number,
    message: string,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

/** Network-level failure (server unreachable), distinct from an HTTP error. */
export class ConnectionLost extends Error {
  constructor(cause: unknown) {
    super(`connection lost: ${cause instanceof Error ? cause.message : String(cause)}`);
    this.name = "ConnectionLost";
  }
}

async function parseError(resp: Response): Promise<never> {
  let message = `HTTP ${resp.status}`;
  try {
    message = ErrorResp.parse(await resp.json()).error;
  } catch {
    // non-JSON error body; keep the status line
  }
  throw new ApiError(resp.status, message);
}

export class Client {
  constructor(
    private readonly base: string = "",
    private readonly fetchFn: FetchLike = (...args) => globalThis.fetch(...args),
  ) {}

  private async request(url: string, init?: RequestInit): Promise<unknown> {
    let resp: Response;
    try {
      resp = await this.fetchFn(this.base + url, init);
    } catch (exc) {
      throw new ConnectionLost(exc);
    }
    if (!resp.ok) await parseError(resp);
    return resp.json();
  }

  private post(url: string, body: unknown): Promise<unknown> {
    return this.request(url, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
    });
  }

  async createSession(seed: SeedObj): Promise<CreateResp> {
    return CreateResp.parse(await this.post("/api/session", { seed }));
  }

  async state(id: string): Promise<StateObj> {
    return StateObj.parse(await this.request(`/api/session/${id}/state`));
  }

  async mutate(id: string, k: number, version: number): Promise<StateObj> {
    return DeltaResp.parse(await this.post(`/api/session/${id}/mutate`, { k, version })).delta;
  }

  async undo(id: string, version: number): Promise<StateObj> {
    return DeltaResp.parse(await this.post(`/api/session/${id}/undo`, { version })).delta;
  }

  async track(
    id: string,
    name: string,
    element: ElementObj,
    version: number,
  ): Promise<StateObj> {
    return DeltaResp.parse(
      await this.post(`/api/session/${id}/track`, { name, element, version }),
    ).delta;
  }
}
