/** Canvas adapter: replays a Scene onto a 2D context.  All geometry and
 * classification happened in buildScene; this file only paints.
 */

import { ArrowShape, Scene, VERTEX_R, VertexShape } from "./scene.js";

const INK = "#1c1c28";
const PAGE_BG = "#ffffff";
const FROZEN_FILL = "#e8e8f0";
const ACTIVE_FILL = "#ffffff";
const VIOLATION = "#c62828";
const ACCENT = "#3949ab";

function drawArrow(ctx: CanvasRenderingContext2D, a: ArrowShape): void {
  ctx.strokeStyle = INK;
  ctx.fillStyle = INK;
  ctx.lineWidth = 1.6;
  ctx.beginPath();
  ctx.moveTo(a.x1, a.y1);
  ctx.lineTo(a.x2, a.y2);
  ctx.stroke();

  const angle = Math.atan2(a.y2 - a.y1, a.x2 - a.x1);
  const head = 9;
  ctx.beginPath();
  ctx.moveTo(a.x2, a.y2);
  ctx.lineTo(a.x2 - head * Math.cos(angle - 0.45), a.y2 - head * Math.sin(angle - 0.45));
  ctx.lineTo(a.x2 - head * Math.cos(angle + 0.45), a.y2 - head * Math.sin(angle + 0.45));
  ctx.closePath();
  ctx.fill();

  if (a.label) {
    ctx.fillStyle = ACCENT;
    ctx.font = "12px system-ui, sans-serif";
    ctx.textAlign = "center";
    ctx.textBaseline = "middle";
    ctx.fillText(a.label, a.lx, a.ly);
  }
}

function drawVertex(ctx: CanvasRenderingContext2D, v: VertexShape): void {
  ctx.lineWidth = v.violation ? 3 : 1.8;
  ctx.strokeStyle = v.violation ? VIOLATION : INK;
  ctx.fillStyle = v.frozen ? FROZEN_FILL : ACTIVE_FILL;
  if (v.shape === "square") {
    ctx.beginPath();
    ctx.rect(v.x - VERTEX_R, v.y - VERTEX_R, 2 * VERTEX_R, 2 * VERTEX_R);
  } else {
    ctx.beginPath();
    ctx.arc(v.x, v.y, VERTEX_R, 0, 2 * Math.PI);
  }
  ctx.fill();
  ctx.stroke();
  ctx.fillStyle = INK;
  ctx.font = "13px system-ui, sans-serif";
  ctx.textAlign = "center";
  ctx.textBaseline = "middle";
  ctx.fillText(v.label, v.x, v.y);
}

export function drawScene(ctx: CanvasRenderingContext2D, scene: Scene): void {
  ctx.fillStyle = PAGE_BG;
  ctx.fillRect(0, 0, scene.width, scene.height);
  for (const a of scene.arrows) drawArrow(ctx, a);
  for (const v of scene.vertices) drawVertex(ctx, v);
}
