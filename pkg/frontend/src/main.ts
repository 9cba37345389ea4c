/** App bootstrap: one store, one canvas, panels re-rendered on every store
 * event.  All algebra lives on the other side of the HTTP API.
 */

import { Client } from "./api/client.js";
import { SeedObj } from "./api/types.js";
import { SessionStore } from "./state/store.js";
import { drawScene } from "./view/draw.js";
import {
  renderHistory,
  renderMatrix,
  renderStatusLine,
  renderTracked,
} from "./view/panels.js";
import { buildScene, hitTest } from "./view/scene.js";

const $ = (id: string): HTMLElement => {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing #${id}`);
  return node;
};

const DEFAULT_BASE = "http://127.0.0.1:8421";

function start(): void {
  const baseInput = $("base") as HTMLInputElement;
  baseInput.value = DEFAULT_BASE;

  let store = new SessionStore(new Client(baseInput.value));
  const canvas = $("quiver") as HTMLCanvasElement;
  const ctx = canvas.getContext("2d");
  if (!ctx) throw new Error("canvas 2d context unavailable");

  const render = (): void => {
    const state = store.state;
    const banner = $("banner");
    const flags = store.flags;
    if (flags.connectionLost) {
      banner.textContent = "service unreachable — check the URL and retry";
      banner.className = "banner fail";
    } else if (flags.conflict) {
      banner.textContent = `another writer won: ${flags.conflict} (resynced)`;
      banner.className = "banner warn";
    } else if (flags.notice) {
      banner.textContent = flags.notice;
      banner.className = "banner warn";
    } else {
      banner.textContent = "";
      banner.className = "banner";
    }

    const trackError = $("track-error");
    trackError.textContent = flags.trackError ?? "";

    document.body.classList.toggle("pending", flags.pending);
    if (!state) return;

    const scene = buildScene(state, canvas.width, canvas.height);
    drawScene(ctx, scene);
    renderStatusLine($("status"), state);
    renderMatrix($("matrix-c"), "C", state.c);
    renderMatrix($("matrix-g"), "G", state.g);
    renderMatrix($("matrix-gt"), "G̃", state.g_tilde);
    renderTracked($("tracked"), store, state);
    renderHistory($("history"), store, state);
    ($("undo") as HTMLButtonElement).disabled = state.version === 0 || flags.pending;
  };

  const attach = (): void => {
    store.subscribe(render);
    render();
  };
  attach();

  canvas.addEventListener("click", (ev) => {
    const state = store.state;
    if (!state) return;
    const rect = canvas.getBoundingClientRect();
    const x = ((ev.clientX - rect.left) / rect.width) * canvas.width;
    const y = ((ev.clientY - rect.top) / rect.height) * canvas.height;
    const scene = buildScene(state, canvas.width, canvas.height);
    const k = hitTest(scene, x, y);
    if (k !== null) void store.clickVertex(k);
  });

  ($("create") as HTMLButtonElement).onclick = () => {
    const raw = ($("seed-json") as HTMLTextAreaElement).value.trim();
    const errBox = $("seed-error");
    errBox.textContent = "";
    let parsed: unknown;
    try {
      parsed = JSON.parse(raw);
    } catch (exc) {
      errBox.textContent = `not JSON: ${exc instanceof Error ? exc.message : exc}`;
      return;
    }
    const obj = parsed as { seed?: unknown };
    const seed = SeedObj.safeParse(obj.seed ?? parsed);
    if (!seed.success) {
      errBox.textContent = "not a seed object (need rank/unfrozen/d/form_num/form_den)";
      return;
    }
    store = new SessionStore(new Client(baseInput.value));
    attach();
    void store.create(seed.data);
  };

  ($("undo") as HTMLButtonElement).onclick = () => void store.undo();

  ($("track-submit") as HTMLButtonElement).onclick = () => {
    const name = ($("track-name") as HTMLInputElement).value;
    const raw = ($("track-json") as HTMLTextAreaElement).value;
    void store.track(name, raw);
  };
}

document.addEventListener("DOMContentLoaded", start);
