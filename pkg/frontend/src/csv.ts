/**
 * Reader for the twositebath CLI CSV contract: '# key=value' preamble
 * lines carrying the full configuration, one header row, then numeric
 * rows. Renderers consume these tables verbatim and never recompute
 * physics.
 */

import { readFileSync } from "node:fs";

export class SchemaError extends Error {}

export interface Table {
  /** key=value pairs from the '#' preamble */
  config: Record<string, string>;
  columns: string[];
  /** row-major numeric data, one inner array per CSV row */
  rows: number[][];
}

export function parseCsv(text: string): Table {
  const config: Record<string, string> = {};
  const lines = text.split("\n").filter((ln) => ln.length > 0);
  let i = 0;
  for (; i < lines.length && lines[i].startsWith("#"); i++) {
    const body = lines[i].replace(/^#\s*/, "");
    const eq = body.indexOf("=");
    if (eq <= 0) throw new SchemaError(`bad preamble line: ${lines[i]}`);
    config[body.slice(0, eq)] = body.slice(eq + 1);
  }
  if (i >= lines.length) throw new SchemaError("no header row");
  const columns = lines[i].split(",");
  const rows: number[][] = [];
  for (const ln of lines.slice(i + 1)) {
    const vals = ln.split(",").map(Number);
    if (vals.length !== columns.length || vals.some(Number.isNaN)) {
      throw new SchemaError(`bad data row: ${ln}`);
    }
    rows.push(vals);
  }
  return { config, columns, rows };
}

export function readTable(path: string, expectedColumns: string[]): Table {
  let text: string;
  try {
    text = readFileSync(path, "ascii");
  } catch {
    throw new SchemaError(`missing CSV: ${path}`);
  }
  const table = parseCsv(text);
  if (
    table.columns.length !== expectedColumns.length ||
    expectedColumns.some((c, j) => table.columns[j] !== c)
  ) {
    throw new SchemaError(
      `${path}: header [${table.columns}] != expected [${expectedColumns}]`,
    );
  }
  if (table.rows.length === 0) throw new SchemaError(`${path}: no data rows`);
  return table;
}

export function column(table: Table, name: string): number[] {
  const j = table.columns.indexOf(name);
  if (j < 0) throw new SchemaError(`no column '${name}'`);
  return table.rows.map((row) => row[j]);
}
