import { existsSync, mkdtempSync, readFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";
import { beforeAll, describe, expect, it } from "vitest";

import {
  decodePixels,
  FIG1_LAYOUT,
  readTextChunks,
  renderFigure1,
  SchemaMismatch,
} from "../dist/index.js";

const FIXTURES = join(dirname(fileURLToPath(import.meta.url)), "fixtures");

function inputsFrom(dir: string): string[] {
  return [join(dir, "wigner.json"), join(dir, "marginals.csv")];
}

/** count heatmap pixels whose blue channel clearly beats red: negativity coding */
function negativePixels(png: Buffer): number {
  const { width, rgba } = decodePixels(png);
  const { x, y, w, h } = FIG1_LAYOUT.main;
  let count = 0;
  for (let py = y; py < y + h; py++) {
    for (let px = x; px < x + w; px++) {
      const off = (py * width + px) * 4;
      if (rgba[off + 2] - rgba[off] >= 5) count++;
    }
  }
  return count;
}

describe("figure 1 renderer", () => {
  let outDir: string;
  let defaultPng: Buffer;

  beforeAll(() => {
    outDir = mkdtempSync(join(tmpdir(), "jwmviz-fig1-"));
    renderFigure1({
      inputPaths: inputsFrom(join(FIXTURES, "default")),
      outputPath: join(outDir, "fig1.png"),
    });
    defaultPng = readFileSync(join(outDir, "fig1.png"));
  });

  it("writes a PNG with the annotation chunks", () => {
    expect(existsSync(join(outDir, "fig1.png"))).toBe(true);
    const text = readTextChunks(defaultPng);
    expect(text.schema_version).toBe("1");
    expect(text.style).toBe("contour");
    expect(Number(text.min_value)).toBeLessThan(0);
  });

  it("keeps the color scale symmetric about zero", () => {
    const text = readTextChunks(defaultPng);
    expect(Number(text.scale_min)).toBe(-Number(text.scale_max));
    expect(Number(text.scale_max)).toBeGreaterThan(0);
  });

  it("shows negative-coded regions for a displaced reading", () => {
    expect(negativePixels(defaultPng)).toBeGreaterThan(10);
  });

  it("shows no negative-coded region when the reading is zero", () => {
    const out = join(outDir, "fig1-q0.png");
    renderFigure1({ inputPaths: inputsFrom(join(FIXTURES, "q0")), outputPath: out });
    const png = readFileSync(out);
    expect(negativePixels(png)).toBe(0);
    expect(Number(readTextChunks(png).min_value)).toBeGreaterThan(-1e-12);
  });

  it("raises SchemaMismatch naming the path when marginals are absent", () => {
    try {
      renderFigure1({
        inputPaths: [join(FIXTURES, "default", "wigner.json")],
        outputPath: join(outDir, "nope.png"),
      });
      expect.unreachable("should have thrown");
    } catch (err) {
      expect(err).toBeInstanceOf(SchemaMismatch);
      expect((err as SchemaMismatch).message).toContain("marginals.csv");
    }
  });

  it("raises SchemaMismatch when an input file does not exist on disk", () => {
    const ghost = join(FIXTURES, "default", "missing-dir");
    expect(() =>
      renderFigure1({ inputPaths: inputsFrom(ghost), outputPath: join(outDir, "nope.png") }),
    ).toThrow(SchemaMismatch);
  });

  it("renders the surface style with its own annotation", () => {
    const out = join(outDir, "fig1-surface.png");
    renderFigure1({
      inputPaths: inputsFrom(join(FIXTURES, "q0")),
      outputPath: out,
      style: "surface",
    });
    const png = readFileSync(out);
    expect(readTextChunks(png).style).toBe("surface");
    const { width, height } = decodePixels(png);
    expect(width).toBe(FIG1_LAYOUT.width);
    expect(height).toBe(FIG1_LAYOUT.height);
  });
});
