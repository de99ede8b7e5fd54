import { mkdtempSync, readFileSync, rmSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import { afterEach, beforeEach, describe, expect, it } from "vitest";

import { runCli, type CliIo } from "../src/cli.js";

const FIXTURES = join(dirname(fileURLToPath(import.meta.url)), "fixtures");
const DENSITY = join(FIXTURES, "density.csv");
const HISTOGRAM = join(FIXTURES, "histogram.csv");

let dir: string;
let out: string[];
let err: string[];
let io: CliIo;

beforeEach(() => {
  dir = mkdtempSync(join(tmpdir(), "figures-test-"));
  out = [];
  err = [];
  io = { stdout: (line) => out.push(line), stderr: (line) => err.push(line) };
});

afterEach(() => {
  rmSync(dir, { recursive: true, force: true });
});

describe("runCli", () => {
  it("renders histogram plus density to an SVG file", () => {
    const target = join(dir, "fig.svg");
    const rc = runCli(
      ["render", "--histogram", HISTOGRAM, "--density", DENSITY, "--out", target, "--title", "spectrum"],
      io,
    );
    expect(rc).toBe(0);
    expect(out).toEqual([`wrote ${target}`]);
    expect(err).toEqual([]);
    const svg = readFileSync(target, "utf8");
    expect(svg.startsWith("<svg")).toBe(true);
    expect(svg).toContain('class="bar"');
    expect(svg).toContain('class="density-curve"');
    expect(svg).toContain("spectrum");
  });

  it("renders a curve-only figure when no histogram is given", () => {
    const target = join(dir, "curve.svg");
    const rc = runCli(["render", "--density", DENSITY, "--out", target], io);
    expect(rc).toBe(0);
    const svg = readFileSync(target, "utf8");
    expect(svg).not.toContain('class="bar"');
    expect(svg).toContain('class="density-curve"');
  });

  it("fails with usage when the subcommand is missing or wrong", () => {
    expect(runCli([], io)).toBe(1);
    expect(runCli(["paint", "--density", DENSITY, "--out", join(dir, "x.svg")], io)).toBe(1);
    expect(err.some((line) => line.includes("usage:"))).toBe(true);
  });

  it("fails on unknown flags", () => {
    expect(runCli(["render", "--density", DENSITY, "--out", join(dir, "x.svg"), "--nope"], io)).toBe(1);
    expect(err[0]).toMatch(/^error:/);
  });

  it("requires --density and --out", () => {
    expect(runCli(["render", "--density", DENSITY], io)).toBe(1);
    expect(runCli(["render", "--out", join(dir, "x.svg")], io)).toBe(1);
    expect(err.every((line) => line.includes("required") || line.includes("usage:"))).toBe(true);
  });

  it("fails cleanly when an input file is missing", () => {
    const rc = runCli(["render", "--density", join(dir, "ghost.csv"), "--out", join(dir, "x.svg")], io);
    expect(rc).toBe(1);
    expect(err[0]).toMatch(/error: cannot read .*ghost\.csv/);
  });

  it("fails cleanly on a malformed density file", () => {
    const bad = join(dir, "bad.csv");
    writeFileSync(bad, "x,density\n1,huh\n2,3\n");
    const rc = runCli(["render", "--density", bad, "--out", join(dir, "x.svg")], io);
    expect(rc).toBe(1);
    expect(err[0]).toMatch(/not a number/);
  });

  it("fails cleanly on an empty histogram file", () => {
    const empty = join(dir, "empty.csv");
    writeFileSync(empty, "");
    const rc = runCli(
      ["render", "--histogram", empty, "--density", DENSITY, "--out", join(dir, "x.svg")],
      io,
    );
    expect(rc).toBe(1);
    expect(err[0]).toMatch(/empty file/);
  });

  it("fails cleanly on a histogram with a wrong header", () => {
    const wrong = join(dir, "wrong.csv");
    writeFileSync(wrong, "x,density\n1,2\n");
    const rc = runCli(
      ["render", "--histogram", wrong, "--density", DENSITY, "--out", join(dir, "x.svg")],
      io,
    );
    expect(rc).toBe(1);
    expect(err[0]).toMatch(/expected header/);
  });

  it("validates --width and --height", () => {
    expect(runCli(["render", "--density", DENSITY, "--out", join(dir, "x.svg"), "--width", "zero"], io)).toBe(1);
    expect(err[0]).toMatch(/--width must be a positive integer/);
    err.length = 0;
    expect(runCli(["render", "--density", DENSITY, "--out", join(dir, "x.svg"), "--height=-3"], io)).toBe(1);
    expect(err[0]).toMatch(/--height must be a positive integer/);
  });

  it("rejects sizes that leave no plot area", () => {
    const rc = runCli(
      ["render", "--density", DENSITY, "--out", join(dir, "x.svg"), "--width", "40", "--height", "40"],
      io,
    );
    expect(rc).toBe(1);
    expect(err[0]).toMatch(/no plot area/);
  });

  it("returns 2 when the output cannot be written", () => {
    const blocker = join(dir, "blocker");
    writeFileSync(blocker, "occupied");
    const rc = runCli(["render", "--density", DENSITY, "--out", join(blocker, "fig.svg")], io);
    expect(rc).toBe(2);
    expect(err[0]).toMatch(/error: cannot write/);
  });

  it("writes a figure whose curve matches the density file byte for byte", () => {
    const target = join(dir, "exact.svg");
    expect(runCli(["render", "--density", DENSITY, "--out", target], io)).toBe(0);
    const svg = readFileSync(target, "utf8");
    const tokens = readFileSync(DENSITY, "utf8")
      .split(/\r?\n/)
      .filter((line) => line.trim().length > 0)
      .slice(1)
      .join(" ");
    expect(svg).toContain(`points="${tokens}"`);
  });
});
