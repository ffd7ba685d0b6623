/**
 * Parsers for the simulator's emitted data files.
 *
 * Every file embeds a schema version; anything that does not parse, carries
 * the wrong version, or has the wrong shape raises SchemaMismatch naming the
 * offending path. The renderer computes nothing itself, so these parsers are
 * the only gate between the files and the pixels.
 */

import { readFileSync } from "node:fs";

export const SUPPORTED_SCHEMA = "1";

export class SchemaMismatch extends Error {
  readonly path: string;

  constructor(path: string, detail: string) {
    super(`${path}: ${detail}`);
    this.name = "SchemaMismatch";
    this.path = path;
  }
}

export interface WignerFile {
  schemaVersion: string;
  config: Record<string, unknown>;
  xGrid: number[];
  pGrid: number[];
  /** row-major over x: values[i][j] = W(x_i, p_j) */
  values: number[][];
  minValue: number;
  maxValue: number;
}

export interface CsvFile {
  schemaVersion: string;
  config: Record<string, unknown>;
  header: string[];
  rows: number[][];
}

function readText(path: string): string {
  try {
    return readFileSync(path, "utf-8");
  } catch (err) {
    throw new SchemaMismatch(path, `cannot read file (${(err as Error).message})`);
  }
}

function isNumberArray(v: unknown): v is number[] {
  return Array.isArray(v) && v.every((x) => typeof x === "number" && Number.isFinite(x));
}

export function loadWigner(path: string): WignerFile {
  const text = readText(path);
  let raw: unknown;
  try {
    raw = JSON.parse(text);
  } catch (err) {
    throw new SchemaMismatch(path, `not valid JSON (${(err as Error).message})`);
  }
  if (typeof raw !== "object" || raw === null || Array.isArray(raw)) {
    throw new SchemaMismatch(path, "top level must be a JSON object");
  }
  const obj = raw as Record<string, unknown>;
  if (obj.schema_version !== SUPPORTED_SCHEMA) {
    throw new SchemaMismatch(
      path,
      `schema_version ${JSON.stringify(obj.schema_version)} is not the supported "${SUPPORTED_SCHEMA}"`,
    );
  }
  if (typeof obj.config !== "object" || obj.config === null) {
    throw new SchemaMismatch(path, "missing embedded config object");
  }
  if (!isNumberArray(obj.x_grid) || !isNumberArray(obj.p_grid)) {
    throw new SchemaMismatch(path, "x_grid and p_grid must be arrays of finite numbers");
  }
  const values = obj.values;
  if (!Array.isArray(values) || values.length !== obj.x_grid.length) {
    throw new SchemaMismatch(path, "values must have one row per x grid point");
  }
  for (const row of values) {
    if (!isNumberArray(row) || row.length !== obj.p_grid.length) {
      throw new SchemaMismatch(path, "every values row must match the p grid length");
    }
  }
  if (typeof obj.min_value !== "number" || typeof obj.max_value !== "number") {
    throw new SchemaMismatch(path, "min_value and max_value must be numbers");
  }
  return {
    schemaVersion: obj.schema_version,
    config: obj.config as Record<string, unknown>,
    xGrid: obj.x_grid,
    pGrid: obj.p_grid,
    values: values as number[][],
    minValue: obj.min_value,
    maxValue: obj.max_value,
  };
}

export function loadCsv(path: string, expectedHeader: string[]): CsvFile {
  const text = readText(path);
  const lines = text.split("\n").filter((ln) => ln.length > 0);
  if (lines.length < 4) {
    throw new SchemaMismatch(path, "file too short for schema + config + header + data");
  }
  const versionLine = lines[0];
  const m = /^# schema_version: (.+)$/.exec(versionLine);
  if (!m || m[1] !== SUPPORTED_SCHEMA) {
    throw new SchemaMismatch(path, `first line must declare schema_version ${SUPPORTED_SCHEMA}`);
  }
  if (!lines[1].startsWith("# config: ")) {
    throw new SchemaMismatch(path, "second line must carry the embedded config");
  }
  let config: Record<string, unknown>;
  try {
    config = JSON.parse(lines[1].slice("# config: ".length));
  } catch (err) {
    throw new SchemaMismatch(path, `embedded config is not valid JSON (${(err as Error).message})`);
  }
  const header = lines[2].split(",");
  if (header.length !== expectedHeader.length || header.some((h, i) => h !== expectedHeader[i])) {
    throw new SchemaMismatch(
      path,
      `header [${header.join(",")}] does not match expected [${expectedHeader.join(",")}]`,
    );
  }
  const rows: number[][] = [];
  for (let i = 3; i < lines.length; i++) {
    const parts = lines[i].split(",");
    if (parts.length !== header.length) {
      throw new SchemaMismatch(path, `row ${i + 1} has ${parts.length} fields, expected ${header.length}`);
    }
    const row = parts.map(Number);
    if (row.some((v) => !Number.isFinite(v))) {
      throw new SchemaMismatch(path, `row ${i + 1} contains a non-numeric field`);
    }
    rows.push(row);
  }
  return { schemaVersion: SUPPORTED_SCHEMA, config, header, rows };
}
