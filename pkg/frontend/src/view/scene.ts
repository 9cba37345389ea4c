/** Scene model for the quiver canvas.
 *
 * buildScene is a pure function of a /state response plus a layout; the
 * canvas adapter just replays the shapes.  Keeping the scene inspectable is
 * what lets the render contract be tested without a DOM.
 */

import { StateObj, rationalToString } from "../api/types.js";
import { Point, ringLayout } from "./layout.js";

export const VERTEX_R = 16;

export interface VertexShape {
  index: number;
  x: number;
  y: number;
  shape: "square" | "circle"; // frozen = square, unfrozen = circle
  label: string;
  frozen: boolean;
  violation: boolean; // mixed signs in this C-column (never expected)
}

export interface ArrowShape {
  from: number;
  to: number;
  x1: number;
  y1: number;
  x2: number;
  y2: number;
  label: string | null; // multiplicity, shown when != 1
  lx: number;
  ly: number;
}

export interface Scene {
  width: number;
  height: number;
  vertices: VertexShape[];
  arrows: ArrowShape[];
  signViolations: number[];
}

/** Columns of the served C matrix holding both signs at once. */
export function mixedSignColumns(c: number[][]): number[] {
  const cols = c[0]?.length ?? 0;
  const bad: number[] = [];
  for (let j = 0; j < cols; j++) {
    let pos = false;
    let neg = false;
    for (const row of c) {
      const v = row[j] ?? 0;
      if (v > 0) pos = true;
      if (v < 0) neg = true;
    }
    if (pos && neg) bad.push(j);
  }
  return bad;
}

export function buildScene(state: StateObj, width = 520, height = 420): Scene {
  const pts = ringLayout(state.seed.rank, width, height);
  const unfrozen = new Set(state.seed.unfrozen);
  const violations = mixedSignColumns(state.c);
  const violationSet = new Set(violations);

  const vertices: VertexShape[] = pts.map((p, i) => ({
    index: i,
    x: p.x,
    y: p.y,
    shape: unfrozen.has(i) ? "circle" : "square",
    label: String(i),
    frozen: !unfrozen.has(i),
    violation: violationSet.has(i),
  }));

  const arrows: ArrowShape[] = [];
  for (const [from, to, mult] of state.edges) {
    const a = pts[from];
    const b = pts[to];
    if (!a || !b) continue;
    const dx = b.x - a.x;
    const dy = b.y - a.y;
    const len = Math.hypot(dx, dy) || 1;
    const ux = dx / len;
    const uy = dy / len;
    const pad = VERTEX_R + 4;
    const multText = rationalToString(mult);
    arrows.push({
      from,
      to,
      x1: a.x + ux * pad,
      y1: a.y + uy * pad,
      x2: b.x - ux * pad,
      y2: b.y - uy * pad,
      label: multText === "1" ? null : multText,
      lx: (a.x + b.x) / 2 - uy * 12,
      ly: (a.y + b.y) / 2 + ux * 12,
    });
  }
  return { width, height, vertices, arrows, signViolations: violations };
}

/** Which vertex a canvas click lands on, if any. */
export function hitTest(scene: Scene, x: number, y: number): number | null {
  for (const v of scene.vertices) {
    if (v.shape === "square") {
      if (Math.abs(x - v.x) <= VERTEX_R && Math.abs(y - v.y) <= VERTEX_R) return v.index;
    } else if (Math.hypot(x - v.x, y - v.y) <= VERTEX_R) {
      return v.index;
    }
  }
  return null;
}
