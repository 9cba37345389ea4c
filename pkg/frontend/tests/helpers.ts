import { readFileSync } from "node:fs";

import { FetchLike } from "../src/api/client.js";
import { DeltaResp, SeedObj, StateObj } from "../src/api/types.js";

export function loadJson(rel: string): unknown {
  return JSON.parse(readFileSync(new URL(`./fixtures/${rel}`, import.meta.url), "utf8"));
}

/** Every fixture state passes the strict schema on the way in, so a test can
 * only ever see service-shaped data.
 */
export const loadState = (rel: string): StateObj => StateObj.parse(loadJson(rel));
export const loadDelta = (rel: string): StateObj => DeltaResp.parse(loadJson(rel)).delta;
export const loadSeed = (rel: string): SeedObj => SeedObj.parse(loadJson(rel));

interface Expected {
  method: string;
  path: string;
  status?: number;
  body?: unknown;
  reject?: boolean;
}

/** Scripted fetch: each request must match the next expectation in line and
 * gets its canned response.  Unexpected traffic fails the test.
 */
export class FakeFetch {
  private queue: Expected[] = [];
  log: Array<{ method: string; path: string; body: unknown }> = [];

  on(method: string, path: string, status: number, body: unknown): this {
    this.queue.push({ method, path, status, body });
    return this;
  }

  refuse(method: string, path: string): this {
    this.queue.push({ method, path, reject: true });
    return this;
  }

  get pendingCount(): number {
    return this.queue.length;
  }

  fn: FetchLike = async (url, init) => {
    const method = init?.method ?? "GET";
    const want = this.queue.shift();
    if (!want) throw Object.assign(new Error(`unexpected request ${method} ${url}`), { unexpected: true });
    if (want.method !== method || !url.endsWith(want.path)) {
      throw Object.assign(
        new Error(`expected ${want.method} ${want.path}, got ${method} ${url}`),
        { unexpected: true },
      );
    }
    this.log.push({
      method,
      path: want.path,
      body: init?.body ? JSON.parse(String(init.body)) : null,
    });
    if (want.reject) throw new TypeError("fetch failed");
    return new Response(JSON.stringify(want.body), {
      status: want.status,
      headers: { "Content-Type": "application/json" },
    });
  };
}
