/**
 * Readout-certainty figure: panel (a) overlays the magnitude of the
 * per-reading certainty with the two conditional pointer densities, panel
 * (b) shows the reading-averaged certainty against coupling strength on a
 * log axis.  Either panel can be rendered alone when only one input table
 * is supplied.
 */

import { writeFileSync } from "node:fs";
import { basename } from "node:path";

import { encodePng } from "./png.js";
import { BLACK, GRAY, Raster, Rgb } from "./raster.js";
import { CsvFile, loadCsv, SchemaMismatch, SUPPORTED_SCHEMA } from "./schema.js";

export const PREDICTABILITY_HEADER = ["q_reading", "P_exact", "density_hit", "density_miss"];
export const AVG_HEADER = ["gamma_over_sigma", "avg_P"];

const HIT: Rgb = [200, 40, 40];
const MISS: Rgb = [40, 70, 200];

export const FIG2_LAYOUT = {
  panelW: 430,
  panelH: 360,
  marginX: 60,
  marginY: 50,
  gap: 90,
} as const;

export interface Figure2Spec {
  inputPaths: string[];
  outputPath: string;
}

interface Panel {
  x: number;
  y: number;
  w: number;
  h: number;
}

function polyline(r: Raster, panel: Panel, xs: number[], ys: number[], color: Rgb): void {
  let prev: [number, number] | null = null;
  for (let k = 0; k < xs.length; k++) {
    const px = panel.x + xs[k] * (panel.w - 1);
    const py = panel.y + (1 - ys[k]) * (panel.h - 1);
    if (prev) r.line(prev[0], prev[1], px, py, color);
    prev = [px, py];
  }
}

function drawPanelA(r: Raster, panel: Panel, table: CsvFile): void {
  const q = table.rows.map((row) => row[0]);
  const certainty = table.rows.map((row) => Math.abs(row[1]));
  const hit = table.rows.map((row) => row[2]);
  const miss = table.rows.map((row) => row[3]);
  const qMin = Math.min(...q);
  const qMax = Math.max(...q);
  const dMax = Math.max(...hit, ...miss) || 1;
  const xs = q.map((v) => (v - qMin) / (qMax - qMin));

  polyline(r, panel, xs, hit.map((v) => (0.92 * v) / dMax), HIT);
  polyline(r, panel, xs, miss.map((v) => (0.92 * v) / dMax), MISS);
  polyline(r, panel, xs, certainty.map((v) => 0.92 * v), BLACK);

  r.frameRect(panel.x - 1, panel.y - 1, panel.w + 2, panel.h + 2, BLACK);
  r.text(panel.x + 6, panel.y + 6, "(a)", BLACK);
  r.text(panel.x + 6, panel.y + 20, "|P|", BLACK);
  r.text(panel.x + 6, panel.y + 34, "hit", HIT);
  r.text(panel.x + 6, panel.y + 48, "miss", MISS);
  r.text(panel.x + panel.w / 2 - 3, panel.y + panel.h + 10, "q", BLACK, 2);
}

function drawPanelB(r: Raster, panel: Panel, table: CsvFile): void {
  const ratio = table.rows.map((row) => Math.log10(row[0]));
  const avg = table.rows.map((row) => row[1]);
  const rMin = Math.min(...ratio);
  const rMax = Math.max(...ratio);
  const xs = ratio.map((v) => (v - rMin) / (rMax - rMin));

  // decade gridlines
  for (let d = Math.ceil(rMin); d <= Math.floor(rMax); d++) {
    const px = panel.x + ((d - rMin) / (rMax - rMin)) * (panel.w - 1);
    r.line(px, panel.y, px, panel.y + panel.h - 1, GRAY);
    r.text(px - 8, panel.y + panel.h + 10, `1e${d}`, BLACK);
  }
  polyline(r, panel, xs, avg.map((v) => 0.92 * v), BLACK);
  for (let k = 0; k < xs.length; k++) {
    const px = panel.x + xs[k] * (panel.w - 1);
    const py = panel.y + (1 - 0.92 * avg[k]) * (panel.h - 1);
    r.fillRect(Math.round(px) - 1, Math.round(py) - 1, 3, 3, BLACK);
  }
  r.frameRect(panel.x - 1, panel.y - 1, panel.w + 2, panel.h + 2, BLACK);
  r.text(panel.x + 6, panel.y + 6, "(b)", BLACK);
  r.text(panel.x + 6, panel.y + 20, "avg P", BLACK);
  r.text(panel.x + panel.w / 2 - 30, panel.y + panel.h + 26, "gamma/sigma", BLACK);
}

export function renderFigure2(spec: Figure2Spec): void {
  const predPath = spec.inputPaths.find((p) => basename(p) === "predictability.csv");
  const avgPath = spec.inputPaths.find((p) => basename(p) === "avg_predictability.csv");
  if (predPath === undefined && avgPath === undefined) {
    throw new SchemaMismatch("predictability.csv", "no usable input supplied");
  }
  const pred = predPath === undefined ? null : loadCsv(predPath, PREDICTABILITY_HEADER);
  const avg = avgPath === undefined ? null : loadCsv(avgPath, AVG_HEADER);

  const L = FIG2_LAYOUT;
  const nPanels = (pred ? 1 : 0) + (avg ? 1 : 0);
  const width = 2 * L.marginX + nPanels * L.panelW + (nPanels - 1) * L.gap;
  const height = 2 * L.marginY + L.panelH + 40;
  const r = new Raster(width, height);

  let px = L.marginX;
  const panels: string[] = [];
  if (pred) {
    drawPanelA(r, { x: px, y: L.marginY, w: L.panelW, h: L.panelH }, pred);
    panels.push("a");
    px += L.panelW + L.gap;
  }
  if (avg) {
    drawPanelB(r, { x: px, y: L.marginY, w: L.panelW, h: L.panelH }, avg);
    panels.push("b");
  }

  const png = encodePng(r.width, r.height, r.rgba, {
    schema_version: SUPPORTED_SCHEMA,
    panels: panels.join(","),
  });
  writeFileSync(spec.outputPath, png);
}
