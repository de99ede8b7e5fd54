import { describe, expect, it } from "vitest";

import {
  CsvError,
  DENSITY_HEADER,
  HISTOGRAM_HEADER,
  parseDensityCsv,
  parseHistogramCsv,
  parsePairsCsv,
} from "../src/csv.js";

describe("parsePairsCsv", () => {
  it("parses a small histogram table", () => {
    const table = parseHistogramCsv("bin_center,density\n0.5,1.25\n1.5,0.75\n", "h.csv");
    expect(table.header).toEqual(HISTOGRAM_HEADER);
    expect(table.rows).toHaveLength(2);
    expect(table.rows[0]).toEqual({ x: 0.5, y: 1.25, rawX: "0.5", rawY: "1.25" });
    expect(table.rows[1].x).toBe(1.5);
  });

  it("keeps the original numeric tokens verbatim", () => {
    const token = "0.39052429175126990";
    const table = parseDensityCsv(`x,density\n${token},0\n2.0e+0,1\n`, "d.csv");
    expect(table.rows[0].rawX).toBe(token);
    expect(table.rows[0].x).toBe(Number(token));
    expect(table.rows[1].rawX).toBe("2.0e+0");
    expect(table.rows[1].x).toBe(2);
  });

  it("accepts CRLF line endings and skips blank lines", () => {
    const table = parseDensityCsv("x,density\r\n0,0\r\n\r\n1,2\r\n", "d.csv");
    expect(table.rows.map((row) => row.x)).toEqual([0, 1]);
  });

  it("rejects an empty file", () => {
    expect(() => parseHistogramCsv("", "h.csv")).toThrow(CsvError);
    expect(() => parseHistogramCsv("\n\n", "h.csv")).toThrow(/empty file/);
  });

  it("rejects a wrong header", () => {
    expect(() => parseDensityCsv("bin_center,density\n1,2\n", "d.csv")).toThrow(
      /d\.csv:1: expected header/,
    );
  });

  it("rejects rows with the wrong field count", () => {
    expect(() => parseDensityCsv("x,density\n1,2,3\n", "d.csv")).toThrow(
      /d\.csv:2: expected 2 fields, got 3/,
    );
    expect(() => parseDensityCsv("x,density\n1\n2,3\n", "d.csv")).toThrow(
      /expected 2 fields, got 1/,
    );
  });

  it("rejects non-numeric tokens with the offending location", () => {
    expect(() => parseDensityCsv("x,density\n1,2\nfoo,3\n", "d.csv")).toThrow(
      /d\.csv:3: not a number: "foo"/,
    );
  });

  it("rejects tokens Number() would accept but a CSV should not", () => {
    for (const bad of ["0x10", "Infinity", "-Infinity", "NaN", "1_000", ""]) {
      expect(() => parseDensityCsv(`x,density\n${bad},1\n2,2\n`, "d.csv")).toThrow(CsvError);
    }
  });

  it("accepts signed and exponent-form numbers", () => {
    const table = parseDensityCsv("x,density\n-1.5,+2\n.5,1e-3\n", "d.csv");
    expect(table.rows[0].x).toBe(-1.5);
    expect(table.rows[0].y).toBe(2);
    expect(table.rows[1].x).toBe(0.5);
    expect(table.rows[1].y).toBe(1e-3);
  });

  it("enforces the minimum row count", () => {
    expect(() => parseDensityCsv("x,density\n1,2\n", "d.csv")).toThrow(
      /need at least 2 data rows, got 1/,
    );
    // a histogram with a single bin is fine
    expect(parseHistogramCsv("bin_center,density\n1,2\n", "h.csv").rows).toHaveLength(1);
  });

  it("exposes the generic reader for other two-column files", () => {
    const table = parsePairsCsv("a,b\n1,2\n", ["a", "b"], 1, "t.csv");
    expect(table.rows[0]).toMatchObject({ x: 1, y: 2 });
  });
});
