/** DOM builders for the side panels.  Pure render-from-state: each call
 * replaces a container's children from the latest /state response.
 */

import { StateObj, TrackedRowObj } from "../api/types.js";
import { HistoryNode, SessionStore, pathKey } from "../state/store.js";
import { Badge, coefficientBadge, statusBadge } from "./badges.js";
import { formatCoefficient } from "./qformat.js";
import { sparkPath } from "./sparkline.js";

const SVG_NS = "http://www.w3.org/2000/svg";

/** Elements above this many terms render as a count only. */
export const TERM_PREVIEW_LIMIT = 40;

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  cls?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (cls) node.className = cls;
  if (text !== undefined) node.textContent = text;
  return node;
}

function badgeEl(badge: Badge): HTMLElement {
  return el("span", `badge badge-${badge.tone}`, badge.text);
}

export function renderMatrix(container: HTMLElement, title: string, m: number[][]): void {
  container.replaceChildren();
  container.appendChild(el("h3", "panel-title", title));
  const table = el("table", "matrix");
  for (const row of m) {
    const tr = el("tr");
    for (const x of row) {
      const td = el("td", x < 0 ? "neg" : x > 0 ? "pos" : "zero", String(x));
      tr.appendChild(td);
    }
    table.appendChild(tr);
  }
  container.appendChild(table);
}

function termPreview(row: TrackedRowObj): string | null {
  const element = row.element;
  if (!element || element.terms.length === 0 || element.terms.length > TERM_PREVIEW_LIMIT) {
    return null;
  }
  const D = element.D;
  return element.terms
    .map((t) => {
      const c = formatCoefficient(t.coeff, D);
      const mono = `X(${t.exp.join(",")})`;
      return c === "1" ? mono : `(${c})·${mono}`;
    })
    .join("  +  ");
}

export function renderTracked(
  container: HTMLElement,
  store: SessionStore,
  state: StateObj,
): void {
  container.replaceChildren();
  container.appendChild(el("h3", "panel-title", "Tracked elements"));
  if (state.tracked.length === 0) {
    container.appendChild(el("p", "muted", "nothing tracked yet"));
    return;
  }
  for (const row of state.tracked) {
    const box = el("div", "tracked-row");
    const head = el("div", "tracked-head");
    head.appendChild(el("strong", undefined, row.name));
    head.appendChild(badgeEl(statusBadge(row)));
    const cb = coefficientBadge(row.coefficient_class);
    if (cb) head.appendChild(badgeEl(cb));
    head.appendChild(el("span", "muted", `${row.term_count} terms`));
    box.appendChild(head);

    const counts = store.termCountsAlong(row.name);
    const d = sparkPath(counts);
    if (d) {
      const svg = document.createElementNS(SVG_NS, "svg");
      svg.setAttribute("viewBox", "0 0 120 28");
      svg.setAttribute("class", "spark");
      const path = document.createElementNS(SVG_NS, "path");
      path.setAttribute("d", d);
      svg.appendChild(path);
      box.appendChild(svg);
    }

    const preview = termPreview(row);
    if (preview) box.appendChild(el("div", "terms", preview));
    else if (row.element) box.appendChild(el("div", "muted", "expression too large to print"));
    container.appendChild(box);
  }
}

export function renderHistory(
  container: HTMLElement,
  store: SessionStore,
  state: StateObj,
): void {
  container.replaceChildren();
  container.appendChild(el("h3", "panel-title", "History"));
  const root = store.root();
  if (!root) return;
  const currentKey = pathKey(state.path);

  const build = (node: HistoryNode): HTMLElement => {
    const li = el("li");
    const btn = el(
      "button",
      node.key === currentKey ? "hist here" : "hist",
      node.key === "" ? "root" : `μ${node.path[node.path.length - 1]}`,
    );
    btn.onclick = () => void store.navigateTo(node.key);
    li.appendChild(btn);
    if (node.children.length) {
      const ul = el("ul");
      for (const childKey of node.children) {
        const child = store.nodes.get(childKey);
        if (child) ul.appendChild(build(child));
      }
      li.appendChild(ul);
    }
    return li;
  };

  const ul = el("ul", "hist-tree");
  ul.appendChild(build(root));
  container.appendChild(ul);
}

export function renderStatusLine(container: HTMLElement, state: StateObj): void {
  const path = state.path.length ? state.path.join(" → ") : "(root)";
  container.textContent = `version ${state.version} · path ${path} · rank ${state.seed.rank}`;
}
