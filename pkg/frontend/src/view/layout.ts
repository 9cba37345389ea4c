export interface Point {
  x: number;
  y: number;
}

/** Ring layout: vertex 0 at twelve o'clock, then clockwise.  Deterministic,
 * so a seed and its mutation render vertices in the same places.
 */
export function ringLayout(rank: number, width: number, height: number, margin = 48): Point[] {
  const cx = width / 2;
  const cy = height / 2;
  if (rank === 1) return [{ x: cx, y: cy }];
  const r = Math.max(10, Math.min(width, height) / 2 - margin);
  const pts: Point[] = [];
  for (let i = 0; i < rank; i++) {
    const angle = -Math.PI / 2 + (2 * Math.PI * i) / rank;
    pts.push({ x: cx + r * Math.cos(angle), y: cy + r * Math.sin(angle) });
  }
  return pts;
}
