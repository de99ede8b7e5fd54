/**
 * Strict readers for the harness's two-column CSV files.
 *
 * Rows keep their original numeric tokens alongside the parsed values so
 * the renderer can embed exactly what the file said, making "the plotted
 * samples equal the CSV" checkable by string comparison.
 */

export interface PairRow {
  x: number;
  y: number;
  rawX: string;
  rawY: string;
}

export interface PairTable {
  header: readonly [string, string];
  rows: PairRow[];
}

export class CsvError extends Error {}

// plain decimal or exponent notation; rejects Number()'s hex/Infinity forms
const NUMBER_TOKEN = /^[+-]?(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?$/;

function parseToken(token: string, file: string, line: number): number {
  if (!NUMBER_TOKEN.test(token)) {
    throw new CsvError(`${file}:${line}: not a number: ${JSON.stringify(token)}`);
  }
  const value = Number(token);
  if (!Number.isFinite(value)) {
    throw new CsvError(`${file}:${line}: non-finite value: ${token}`);
  }
  return value;
}

export function parsePairsCsv(
  text: string,
  expectedHeader: readonly [string, string],
  minRows: number,
  file: string,
): PairTable {
  const lines = text.split(/\r?\n/).filter((line) => line.trim().length > 0);
  if (lines.length === 0) {
    throw new CsvError(`${file}: empty file`);
  }
  const wanted = expectedHeader.join(",");
  if (lines[0].trim() !== wanted) {
    throw new CsvError(
      `${file}:1: expected header ${JSON.stringify(wanted)}, got ${JSON.stringify(lines[0].trim())}`,
    );
  }
  const rows: PairRow[] = [];
  for (let i = 1; i < lines.length; i++) {
    const fields = lines[i].split(",");
    if (fields.length !== 2) {
      throw new CsvError(`${file}:${i + 1}: expected 2 fields, got ${fields.length}`);
    }
    const rawX = fields[0].trim();
    const rawY = fields[1].trim();
    rows.push({
      x: parseToken(rawX, file, i + 1),
      y: parseToken(rawY, file, i + 1),
      rawX,
      rawY,
    });
  }
  if (rows.length < minRows) {
    throw new CsvError(`${file}: need at least ${minRows} data rows, got ${rows.length}`);
  }
  return { header: expectedHeader, rows };
}

export const HISTOGRAM_HEADER = ["bin_center", "density"] as const;
export const DENSITY_HEADER = ["x", "density"] as const;

export function parseHistogramCsv(text: string, file: string): PairTable {
  return parsePairsCsv(text, HISTOGRAM_HEADER, 1, file);
}

export function parseDensityCsv(text: string, file: string): PairTable {
  return parsePairsCsv(text, DENSITY_HEADER, 2, file);
}
