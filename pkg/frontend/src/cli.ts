#!/usr/bin/env node
/**
 * Figure renderer CLI.  Reads tables emitted by the simulation CLI and
 * writes a PNG; it never recomputes physics, only draws what the files say.
 *
 *   jwmviz render --fig 1 --in out/ --out fig1.png [--style contour|surface]
 *   jwmviz render --fig 2 --in out/ --out fig2.png
 */

import { existsSync, realpathSync } from "node:fs";
import { join } from "node:path";
import { pathToFileURL } from "node:url";

import { renderFigure1 } from "./figure1.js";
import { renderFigure2 } from "./figure2.js";
import { SchemaMismatch } from "./schema.js";

const USAGE =
  "usage: jwmviz render --fig 1|2 --in <dir> --out <file.png> [--style contour|surface]";

interface Args {
  fig: number;
  inDir: string;
  outFile: string;
  style: "contour" | "surface";
}

function parseArgs(argv: string[]): Args | null {
  if (argv[0] !== "render") return null;
  let fig: number | null = null;
  let inDir: string | null = null;
  let outFile: string | null = null;
  let style: "contour" | "surface" = "contour";
  for (let i = 1; i < argv.length; i += 2) {
    const flag = argv[i];
    const value = argv[i + 1];
    if (value === undefined) return null;
    if (flag === "--fig") {
      if (value !== "1" && value !== "2") return null;
      fig = Number(value);
    } else if (flag === "--in") {
      inDir = value;
    } else if (flag === "--out") {
      outFile = value;
    } else if (flag === "--style") {
      if (value !== "contour" && value !== "surface") return null;
      style = value;
    } else {
      return null;
    }
  }
  if (fig === null || inDir === null || outFile === null) return null;
  return { fig, inDir, outFile, style };
}

export function main(argv: string[]): number {
  const args = parseArgs(argv);
  if (args === null) {
    process.stderr.write(USAGE + "\n");
    return 1;
  }
  try {
    if (args.fig === 1) {
      renderFigure1({
        inputPaths: [join(args.inDir, "wigner.json"), join(args.inDir, "marginals.csv")],
        outputPath: args.outFile,
        style: args.style,
      });
    } else {
      const candidates = [
        join(args.inDir, "predictability.csv"),
        join(args.inDir, "avg_predictability.csv"),
      ].filter((p) => existsSync(p));
      renderFigure2({ inputPaths: candidates, outputPath: args.outFile });
    }
  } catch (err) {
    if (err instanceof SchemaMismatch) {
      process.stderr.write(`schema mismatch: ${err.message}\n`);
      return 2;
    }
    if (err instanceof Error && "code" in err) {
      process.stderr.write(`io error: ${err.message}\n`);
      return 2;
    }
    throw err;
  }
  return 0;
}

function isMainModule(): boolean {
  const entry = process.argv[1];
  if (entry === undefined) return false;
  try {
    return import.meta.url === pathToFileURL(realpathSync(entry)).href;
  } catch {
    return false;
  }
}

if (isMainModule()) {
  process.exit(main(process.argv.slice(2)));
}
