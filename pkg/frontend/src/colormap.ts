/**
 * Diverging colormap anchored at zero: blue for negative, white at zero,
 * red for positive. The anchor is what makes Wigner negativity unambiguous,
 * so the scale is always symmetric about 0 regardless of the data skew.
 */

import type { Rgb } from "./raster.js";

const NEG: Rgb = [40, 70, 200];
const POS: Rgb = [200, 40, 40];
const ZERO: Rgb = [255, 255, 255];

function lerp(a: Rgb, b: Rgb, t: number): Rgb {
  return [
    Math.round(a[0] + (b[0] - a[0]) * t),
    Math.round(a[1] + (b[1] - a[1]) * t),
    Math.round(a[2] + (b[2] - a[2]) * t),
  ];
}

/** value mapped against the symmetric range [-vmax, +vmax] */
export function diverging(value: number, vmax: number): Rgb {
  if (vmax <= 0) return ZERO;
  const t = Math.max(-1, Math.min(1, value / vmax));
  return t < 0 ? lerp(ZERO, NEG, -t) : lerp(ZERO, POS, t);
}

/** symmetric scale bound: max(|min|, |max|) */
export function symmetricMax(min: number, max: number): number {
  return Math.max(Math.abs(min), Math.abs(max));
}
