/** Display formatting for served q-coefficients.
 *
 * A coefficient arrives as [[units, "decimal"], ...] with the exponent in
 * integer units of 1/D.  When the whole coefficient is exactly a balanced
 * q-integer [n] = q^{n-1} + q^{n-3} + ... + q^{1-n} (possibly shifted by a
 * global q-power, scaled by an integer, or thinned to the ratio [mn]/[m]),
 * render that closed form; anything else renders as a raw Laurent string.
 * Values stay BigInt-exact end to end.
 */

import { CoeffPair } from "../api/types.js";

function gcd(a: number, b: number): number {
  a = Math.abs(a);
  b = Math.abs(b);
  while (b) [a, b] = [b, a % b];
  return a || 1;
}

/** q^{units/D} as text; "" for the zeroth power. */
export function qPower(units: number, D: number): string {
  if (units === 0) return "";
  const g = gcd(units, D);
  const num = units / g;
  const den = D / g;
  if (den === 1) return num === 1 ? "q" : `q^${num}`;
  return `q^(${num}/${den})`;
}

function monomial(coeff: bigint, units: number, D: number): string {
  const p = qPower(units, D);
  if (p === "") return coeff.toString();
  if (coeff === 1n) return p;
  if (coeff === -1n) return `-${p}`;
  return `${coeff}·${p}`;
}

function rawLaurent(pairs: Array<[number, bigint]>, D: number): string {
  const sorted = [...pairs].sort((a, b) => b[0] - a[0]);
  let out = "";
  for (const [u, c] of sorted) {
    if (out === "") {
      out = monomial(c, u, D);
    } else if (c < 0n) {
      out += ` − ${monomial(-c, u, D)}`;
    } else {
      out += ` + ${monomial(c, u, D)}`;
    }
  }
  return out;
}

export function formatCoefficient(coeff: CoeffPair[], D: number): string {
  const pairs: Array<[number, bigint]> = coeff
    .map(([u, c]): [number, bigint] => [u, BigInt(c)])
    .filter(([, c]) => c !== 0n);
  if (pairs.length === 0) return "0";
  if (pairs.length === 1) {
    const [u, c] = pairs[0]!;
    return monomial(c, u, D);
  }

  pairs.sort((a, b) => a[0] - b[0]);
  const scale = pairs[0]![1];
  const sameCoeff = pairs.every(([, c]) => c === scale);
  const step = pairs[1]![0] - pairs[0]![0];
  const arithmetic = pairs.every(([u], i) => u === pairs[0]![0] + i * step);

  if (sameCoeff && arithmetic && step > 0 && step % 2 === 0 && scale > 0n) {
    const s = step / 2; // exponent half-step, still in 1/D units
    if (s % D === 0) {
      const m = s / D;
      const n = pairs.length;
      const lo = pairs[0]![0];
      const hi = pairs[n - 1]![0];
      const center = (lo + hi) / 2; // integral: hi - lo is even
      const base = m === 1 ? `[${n}]` : `[${m * n}]/[${m}]`;
      let out = base;
      const shift = qPower(center, D);
      if (shift !== "") out = `${shift}·${out}`;
      if (scale !== 1n) out = `${scale}·${out}`;
      return out;
    }
  }
  return rawLaurent(pairs, D);
}
