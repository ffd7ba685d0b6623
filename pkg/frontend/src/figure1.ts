/**
 * Phase-space figure: central Wigner panel with a zero-anchored diverging
 * colormap, flanking marginal curves, a colorbar, and a machine-readable
 * min-value annotation (drawn and embedded as a tEXt chunk).
 */

import { writeFileSync } from "node:fs";
import { basename } from "node:path";

import { diverging, symmetricMax } from "./colormap.js";
import { encodePng } from "./png.js";
import { BLACK, GRAY, Raster, textWidth } from "./raster.js";
import { loadCsv, loadWigner, SchemaMismatch, SUPPORTED_SCHEMA, WignerFile } from "./schema.js";

export interface FigureSpec {
  inputPaths: string[];
  outputPath: string;
  style?: "contour" | "surface";
}

export const MARGINALS_HEADER = ["u", "Px", "Pp"];

// main heatmap rectangle in image coordinates; exported so the tests can
// scan exactly the field pixels
export const FIG1_LAYOUT = {
  width: 880,
  height: 800,
  main: { x: 70, y: 200, w: 420, h: 420 },
  top: { x: 70, y: 40, w: 420, h: 130 },
  right: { x: 520, y: 200, w: 130, h: 420 },
  bar: { x: 700, y: 200, w: 22, h: 420 },
} as const;

function findInput(paths: string[], name: string): string {
  const hit = paths.find((p) => basename(p) === name);
  if (hit === undefined) {
    throw new SchemaMismatch(name, "required input not supplied");
  }
  return hit;
}

function drawHeatmap(r: Raster, field: WignerFile, vmax: number): void {
  const { x, y, w, h } = FIG1_LAYOUT.main;
  const nx = field.xGrid.length;
  const np = field.pGrid.length;
  for (let py = 0; py < h; py++) {
    const j = Math.min(np - 1, Math.floor(((h - 1 - py) / h) * np));
    for (let px = 0; px < w; px++) {
      const i = Math.min(nx - 1, Math.floor((px / w) * nx));
      r.set(x + px, y + py, diverging(field.values[i][j], vmax));
    }
  }
}

function drawContours(r: Raster, field: WignerFile, vmax: number): void {
  const { x, y, w, h } = FIG1_LAYOUT.main;
  const nx = field.xGrid.length;
  const np = field.pGrid.length;
  const toPx = (i: number) => x + (i / (nx - 1)) * (w - 1);
  const toPy = (j: number) => y + (1 - j / (np - 1)) * (h - 1);
  const levels = [-0.5, -0.25, 0.25, 0.5].map((f) => f * vmax);
  for (const level of levels) {
    for (let i = 0; i < nx - 1; i++) {
      for (let j = 0; j < np - 1; j++) {
        // marching squares: find level crossings on the four cell edges
        const v00 = field.values[i][j];
        const v10 = field.values[i + 1][j];
        const v01 = field.values[i][j + 1];
        const v11 = field.values[i + 1][j + 1];
        const pts: [number, number][] = [];
        const edge = (va: number, vb: number, ia: number, ja: number, ib: number, jb: number) => {
          if ((va < level) !== (vb < level)) {
            const t = (level - va) / (vb - va);
            pts.push([ia + (ib - ia) * t, ja + (jb - ja) * t]);
          }
        };
        edge(v00, v10, i, j, i + 1, j);
        edge(v10, v11, i + 1, j, i + 1, j + 1);
        edge(v11, v01, i + 1, j + 1, i, j + 1);
        edge(v01, v00, i, j + 1, i, j);
        if (pts.length >= 2) {
          r.line(toPx(pts[0][0]), toPy(pts[0][1]), toPx(pts[1][0]), toPy(pts[1][1]), GRAY);
        }
      }
    }
  }
}

function drawSurface(r: Raster, field: WignerFile, vmax: number): void {
  const { x, y, w, h } = FIG1_LAYOUT.main;
  const nx = field.xGrid.length;
  const np = field.pGrid.length;
  const step = Math.max(1, Math.floor(nx / 56));
  const cx = x + w / 2;
  const cy = y + h * 0.62;
  const sx = (w * 0.48) / (nx + np);
  const sy = (h * 0.26) / (nx + np);
  const hgt = h * 0.3;
  const proj = (i: number, j: number): [number, number] => [
    cx + (i - j) * sx * 2,
    cy + (i + j - nx) * sy - (field.values[i][j] / vmax) * hgt * 0.5,
  ];
  for (let i = 0; i < nx; i += step) {
    let prev: [number, number] | null = null;
    for (let j = 0; j < np; j += step) {
      const pt = proj(i, j);
      if (prev) r.line(prev[0], prev[1], pt[0], pt[1], diverging(field.values[i][j], vmax));
      prev = pt;
    }
  }
  for (let j = 0; j < np; j += step) {
    let prev: [number, number] | null = null;
    for (let i = 0; i < nx; i += step) {
      const pt = proj(i, j);
      if (prev) r.line(prev[0], prev[1], pt[0], pt[1], diverging(field.values[i][j], vmax));
      prev = pt;
    }
  }
}

function drawCurveTop(r: Raster, u: number[], vals: number[]): void {
  const { x, y, w, h } = FIG1_LAYOUT.top;
  const vmax = Math.max(...vals) || 1;
  let prev: [number, number] | null = null;
  for (let k = 0; k < u.length; k++) {
    const px = x + (k / (u.length - 1)) * (w - 1);
    const py = y + (1 - (vals[k] / vmax) * 0.92) * (h - 1);
    if (prev) r.line(prev[0], prev[1], px, py, BLACK);
    prev = [px, py];
  }
}

function drawCurveRight(r: Raster, u: number[], vals: number[]): void {
  const { x, y, w, h } = FIG1_LAYOUT.right;
  const vmax = Math.max(...vals) || 1;
  let prev: [number, number] | null = null;
  for (let k = 0; k < u.length; k++) {
    const py = y + (1 - k / (u.length - 1)) * (h - 1);
    const px = x + (vals[k] / vmax) * 0.92 * (w - 1);
    if (prev) r.line(prev[0], prev[1], px, py, BLACK);
    prev = [px, py];
  }
}

function drawColorbar(r: Raster, vmax: number): void {
  const { x, y, w, h } = FIG1_LAYOUT.bar;
  for (let py = 0; py < h; py++) {
    const v = vmax * (1 - (2 * py) / (h - 1));
    for (let px = 0; px < w; px++) {
      r.set(x + px, y + py, diverging(v, vmax));
    }
  }
  r.frameRect(x, y, w, h, BLACK);
  r.text(x + w + 6, y - 3, `+${vmax.toExponential(1)}`, BLACK);
  r.text(x + w + 6, y + Math.floor(h / 2) - 3, "0", BLACK);
  r.text(x + w + 6, y + h - 4, `-${vmax.toExponential(1)}`, BLACK);
}

export function renderFigure1(spec: FigureSpec): void {
  const wignerPath = findInput(spec.inputPaths, "wigner.json");
  const margPath = findInput(spec.inputPaths, "marginals.csv");
  const field = loadWigner(wignerPath);
  const marg = loadCsv(margPath, MARGINALS_HEADER);
  const style = spec.style ?? "contour";

  const r = new Raster(FIG1_LAYOUT.width, FIG1_LAYOUT.height);
  const vmax = symmetricMax(field.minValue, field.maxValue);

  if (style === "surface") {
    drawSurface(r, field, vmax);
  } else {
    drawHeatmap(r, field, vmax);
    drawContours(r, field, vmax);
  }
  const m = FIG1_LAYOUT.main;
  r.frameRect(m.x - 1, m.y - 1, m.w + 2, m.h + 2, BLACK);
  r.text(m.x + m.w / 2 - 3, m.y + m.h + 10, "x", BLACK, 2);
  r.text(m.x - 30, m.y + m.h / 2 - 7, "p", BLACK, 2);

  const u = marg.rows.map((row) => row[0]);
  drawCurveTop(r, u, marg.rows.map((row) => row[1]));
  const t = FIG1_LAYOUT.top;
  r.frameRect(t.x - 1, t.y - 1, t.w + 2, t.h + 2, BLACK);
  r.text(t.x + 6, t.y + 6, "P(x)", BLACK);

  drawCurveRight(r, u, marg.rows.map((row) => row[2]));
  const rt = FIG1_LAYOUT.right;
  r.frameRect(rt.x - 1, rt.y - 1, rt.w + 2, rt.h + 2, BLACK);
  r.text(rt.x + 6, rt.y + 6, "P(p)", BLACK);

  drawColorbar(r, vmax);

  const annotation = `min W = ${field.minValue.toExponential(3)}`;
  r.text(m.x, m.y + m.h + 40, annotation, BLACK, 2);
  r.text(
    FIG1_LAYOUT.width - textWidth(`q = ${String(field.config.q_reading)}`) - 20,
    20,
    `q = ${String(field.config.q_reading)}`,
    BLACK,
  );

  const png = encodePng(r.width, r.height, r.rgba, {
    schema_version: SUPPORTED_SCHEMA,
    style,
    min_value: String(field.minValue),
    max_value: String(field.maxValue),
    scale_min: String(-vmax),
    scale_max: String(vmax),
  });
  writeFileSync(spec.outputPath, png);
}
