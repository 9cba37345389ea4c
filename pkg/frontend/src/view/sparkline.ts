/** Term-count sparkline: values along the history path -> SVG path string.
 * Nulls (states never cached) break the line into segments.
 */

export function sparkPath(
  values: Array<number | null>,
  width = 120,
  height = 28,
  pad = 2,
): string {
  const present = values.filter((v): v is number => v !== null);
  if (values.length === 0 || present.length === 0) return "";
  const max = Math.max(...present, 1);
  const innerW = width - 2 * pad;
  const innerH = height - 2 * pad;
  const stepX = values.length > 1 ? innerW / (values.length - 1) : 0;
  let out = "";
  let penDown = false;
  values.forEach((v, i) => {
    if (v === null) {
      penDown = false;
      return;
    }
    const x = pad + (values.length > 1 ? i * stepX : innerW / 2);
    const y = pad + innerH - (v / max) * innerH;
    out += `${penDown ? "L" : "M"}${round1(x)},${round1(y)}`;
    penDown = true;
  });
  return out;
}

function round1(x: number): number {
  return Math.round(x * 10) / 10;
}
