/** Session store: the single owner of client-side state.
 *
 * Views are pure functions of `state` plus layout; nothing in here computes
 * algebra — every matrix entry, edge, verdict, and term count is taken from
 * a service response verbatim.
 *
 * History is a tree: each visited path keeps its last-seen state as a
 * display cache, so revisiting a branch paints instantly, and the server
 * response that follows overwrites the cache (the server is authoritative).
 * Writes are optimistic and roll back on 409, after which the store
 * resyncs to pick up the winning writer's version token.
 */

import { ApiError, Client, ConnectionLost } from "../api/client.js";
import { ElementObj, SeedObj, StateObj } from "../api/types.js";
import { applyDelta } from "./delta.js";

export interface HistoryNode {
  key: string;
  path: number[];
  state: StateObj | null;
  parent: string | null;
  children: string[];
}

export interface Flags {
  pending: boolean;
  conflict: string | null;
  connectionLost: boolean;
  trackError: string | null;
  notice: string | null;
}

export const pathKey = (path: readonly number[]): string => path.join(",");

function commonPrefixLen(a: readonly number[], b: readonly number[]): number {
  let i = 0;
  while (i < a.length && i < b.length && a[i] === b[i]) i++;
  return i;
}

export class SessionStore {
  state: StateObj | null = null;
  nodes = new Map<string, HistoryNode>();
  flags: Flags = {
    pending: false,
    conflict: null,
    connectionLost: false,
    trackError: null,
    notice: null,
  };

  private listeners: Array<() => void> = [];

  constructor(private readonly client: Client) {}

  subscribe(fn: () => void): () => void {
    this.listeners.push(fn);
    return () => {
      this.listeners = this.listeners.filter((f) => f !== fn);
    };
  }

  private emit(): void {
    for (const fn of this.listeners) fn();
  }

  // -- bookkeeping ----------------------------------------------------------

  private cacheNode(state: StateObj): void {
    const key = pathKey(state.path);
    const existing = this.nodes.get(key);
    if (existing) {
      existing.state = state;
      return;
    }
    const parent = state.path.length ? pathKey(state.path.slice(0, -1)) : null;
    this.nodes.set(key, { key, path: [...state.path], state, parent, children: [] });
    if (parent !== null) {
      const p = this.nodes.get(parent);
      if (p && !p.children.includes(key)) p.children.push(key);
    }
  }

  /** Entering a new user command: stale banners go away, spinner comes on. */
  private beginCommand(): void {
    this.flags.conflict = null;
    this.flags.notice = null;
    this.flags.pending = true;
    this.emit();
  }

  private accept(state: StateObj): void {
    this.state = state;
    this.flags.connectionLost = false;
    this.cacheNode(state);
  }

  private fail(exc: unknown): void {
    if (exc instanceof ConnectionLost) {
      this.flags.connectionLost = true;
    } else if (exc instanceof ApiError && exc.status === 409) {
      this.flags.conflict = exc.message;
    } else if (exc instanceof ApiError) {
      this.flags.notice = exc.message;
    } else {
      this.flags.notice = String(exc);
    }
  }

  private async resync(): Promise<void> {
    if (!this.state) return;
    try {
      this.accept(await this.client.state(this.state.id));
    } catch (exc) {
      this.fail(exc);
    }
  }

  // -- commands ---------------------------------------------------------------

  async create(seed: SeedObj): Promise<void> {
    this.beginCommand();
    try {
      const { id } = await this.client.createSession(seed);
      this.nodes.clear();
      this.accept(await this.client.state(id));
    } catch (exc) {
      this.fail(exc);
    } finally {
      this.flags.pending = false;
      this.emit();
    }
  }

  /** Canvas click: frozen vertices are inert, unfrozen ones mutate. */
  async clickVertex(k: number): Promise<void> {
    const st = this.state;
    if (!st || this.flags.pending) return;
    if (!st.seed.unfrozen.includes(k)) return;
    await this.mutate(k);
  }

  async mutate(k: number): Promise<void> {
    const before = this.state;
    if (!before || this.flags.pending) return;
    const cached = this.nodes.get(pathKey([...before.path, k]))?.state;
    if (cached) this.state = cached; // optimistic: repaint a known branch now
    this.beginCommand();
    try {
      const delta = await this.client.mutate(before.id, k, before.version);
      this.accept(applyDelta(before, delta));
    } catch (exc) {
      this.state = before; // roll back the optimistic repaint
      this.fail(exc);
      if (exc instanceof ApiError && exc.status === 409) await this.resync();
    } finally {
      this.flags.pending = false;
      this.emit();
    }
  }

  async undo(): Promise<void> {
    const before = this.state;
    if (!before || this.flags.pending || before.version === 0) return;
    this.beginCommand();
    try {
      this.accept(applyDelta(before, await this.client.undo(before.id, before.version)));
    } catch (exc) {
      this.fail(exc);
      if (exc instanceof ApiError && exc.status === 409) await this.resync();
    } finally {
      this.flags.pending = false;
      this.emit();
    }
  }

  /** History-tree click: undo back to the fork, then replay the branch.
   * Tracked rows follow the server's snapshot stack, so rows added past the
   * fork point are dropped — same as pressing undo by hand.
   */
  async navigateTo(key: string): Promise<void> {
    const target = this.nodes.get(key);
    const before = this.state;
    if (!target || !before || this.flags.pending) return;
    if (pathKey(before.path) === key) return;
    if (target.state) this.state = target.state; // optimistic restore from cache
    this.beginCommand();
    try {
      let live = before;
      const keep = commonPrefixLen(before.path, target.path);
      while (live.path.length > keep) {
        live = applyDelta(live, await this.client.undo(live.id, live.version));
      }
      for (const k of target.path.slice(keep)) {
        live = applyDelta(live, await this.client.mutate(live.id, k, live.version));
      }
      this.accept(live);
    } catch (exc) {
      this.fail(exc);
      await this.resync(); // a partial replay may have landed anywhere
    } finally {
      this.flags.pending = false;
      this.emit();
    }
  }

  /** Track dialog submit.  Parse problems surface inline, never as requests. */
  async track(name: string, rawJson: string): Promise<void> {
    const before = this.state;
    if (!before || this.flags.pending) return;
    this.flags.trackError = null;
    const text = rawJson.trim();
    if (!text) {
      this.flags.trackError = "element is empty";
      this.emit();
      return;
    }
    let parsed: unknown;
    try {
      parsed = JSON.parse(text);
    } catch (exc) {
      this.flags.trackError = `not JSON: ${exc instanceof Error ? exc.message : exc}`;
      this.emit();
      return;
    }
    const checked = ElementObj.safeParse(parsed);
    if (!checked.success) {
      const first = checked.error.issues[0];
      this.flags.trackError = `not an element: ${first ? first.path.join(".") + " " + first.message : "bad shape"}`;
      this.emit();
      return;
    }
    this.beginCommand();
    try {
      const delta = await this.client.track(
        before.id,
        name.trim() || "tracked",
        checked.data,
        before.version,
      );
      this.accept(applyDelta(before, delta));
    } catch (exc) {
      if (exc instanceof ApiError && exc.status !== 409) {
        this.flags.trackError = exc.message; // duplicate name, bad seed ref, ...
      } else {
        this.fail(exc);
        if (exc instanceof ApiError) await this.resync();
      }
    } finally {
      this.flags.pending = false;
      this.emit();
    }
  }

  // -- queries ------------------------------------------------------------------

  /** Term counts for one tracked name along root -> current path, from the
   * display caches; gaps (never-visited prefixes) come through as null.
   */
  termCountsAlong(name: string): Array<number | null> {
    const st = this.state;
    if (!st) return [];
    const counts: Array<number | null> = [];
    for (let i = 0; i <= st.path.length; i++) {
      const node = this.nodes.get(pathKey(st.path.slice(0, i)));
      const row = node?.state?.tracked.find((r) => r.name === name);
      counts.push(row ? row.term_count : null);
    }
    return counts;
  }

  root(): HistoryNode | undefined {
    return this.nodes.get("");
  }
}
