/**
 * Reader for the qesspin CLI's CSV flavor.
 *
 * Every file starts with a `# {...}` line holding run metadata as JSON,
 * then a plain header row and numeric data. Parities arrive as the strings
 * "even" / "odd"; everything else is numeric.
 */

import { readFileSync } from "fs";
import Papa from "papaparse";

export type Cell = number | string;

export interface Table {
  meta: Record<string, unknown>;
  columns: string[];
  rows: Record<string, Cell>[];
}

export class TableError extends Error {}

export function parseTable(text: string, source = "<string>"): Table {
  let meta: Record<string, unknown> = {};
  let body = text;
  if (text.startsWith("# ")) {
    const nl = text.indexOf("\n");
    const head = nl >= 0 ? text.slice(2, nl) : text.slice(2);
    try {
      meta = JSON.parse(head) as Record<string, unknown>;
    } catch {
      throw new TableError(`${source}: metadata line is not valid JSON`);
    }
    body = nl >= 0 ? text.slice(nl + 1) : "";
  }
  const parsed = Papa.parse<Record<string, Cell>>(body, {
    header: true,
    delimiter: ",",
    dynamicTyping: true,
    skipEmptyLines: true,
  });
  if (parsed.errors.length > 0) {
    const first = parsed.errors[0];
    throw new TableError(
      `${source}: row ${first?.row ?? "?"}: ${first?.message ?? "parse error"}`,
    );
  }
  const columns = (parsed.meta.fields ?? []).map((f) => f.trim());
  if (columns.length === 0) {
    throw new TableError(`${source}: no header row`);
  }
  return { meta, columns, rows: parsed.data };
}

export function readTable(path: string): Table {
  return parseTable(readFileSync(path, "utf8"), path);
}

/** Throw unless the table has every listed column. */
export function requireColumns(table: Table, wanted: string[], source = "table"): void {
  const missing = wanted.filter((c) => !table.columns.includes(c));
  if (missing.length > 0) {
    throw new TableError(
      `${source}: missing column(s) ${missing.join(", ")}; have ${table.columns.join(", ")}`,
    );
  }
}

/** One column as numbers; non-numeric cells are an error. */
export function numbers(table: Table, column: string, source = "table"): number[] {
  requireColumns(table, [column], source);
  return table.rows.map((row, i) => {
    const v = row[column];
    if (typeof v !== "number" || !Number.isFinite(v)) {
      throw new TableError(`${source}: ${column} row ${i} is not a finite number`);
    }
    return v;
  });
}

/** One column as strings. */
export function strings(table: Table, column: string, source = "table"): string[] {
  requireColumns(table, [column], source);
  return table.rows.map((row) => String(row[column]));
}
