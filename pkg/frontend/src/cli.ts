/**
 * Command line entry: `render --density d.csv --out fig.svg` plus an
 * optional `--histogram h.csv` and `--title "..."`. Returns 0 on
 * success, 1 on bad input (usage, missing or malformed files), 2 when
 * writing the image fails.
 */

import { readFileSync, writeFileSync } from "node:fs";
import { parseArgs } from "node:util";

import { CsvError, parseDensityCsv, parseHistogramCsv, type PairTable } from "./csv.js";
import { buildScene } from "./scene.js";
import { renderSvg } from "./svg.js";

export const USAGE =
  "usage: render --density density.csv --out figure.svg " +
  "[--histogram histogram.csv] [--title text] [--width px] [--height px]";

export interface CliIo {
  stdout: (line: string) => void;
  stderr: (line: string) => void;
}

const processIo: CliIo = {
  stdout: (line) => process.stdout.write(line + "\n"),
  stderr: (line) => process.stderr.write(line + "\n"),
};

function readText(path: string): string {
  try {
    return readFileSync(path, "utf8");
  } catch (error) {
    throw new CsvError(`cannot read ${path}: ${(error as Error).message}`);
  }
}

function positiveInt(raw: string, flag: string): number {
  const value = Number(raw);
  if (!Number.isInteger(value) || value <= 0) {
    throw new CsvError(`${flag} must be a positive integer, got ${raw}`);
  }
  return value;
}

export function runCli(argv: string[], io: CliIo = processIo): number {
  let parsed;
  try {
    parsed = parseArgs({
      args: argv,
      allowPositionals: true,
      options: {
        histogram: { type: "string" },
        density: { type: "string" },
        out: { type: "string" },
        title: { type: "string" },
        width: { type: "string" },
        height: { type: "string" },
      },
    });
  } catch (error) {
    io.stderr(`error: ${(error as Error).message}`);
    io.stderr(USAGE);
    return 1;
  }

  const { positionals, values } = parsed;
  if (positionals.length !== 1 || positionals[0] !== "render") {
    io.stderr(`error: expected the single subcommand "render"`);
    io.stderr(USAGE);
    return 1;
  }
  if (values.density === undefined || values.out === undefined) {
    io.stderr("error: --density and --out are required");
    io.stderr(USAGE);
    return 1;
  }

  let svg: string;
  try {
    const density = parseDensityCsv(readText(values.density), values.density);
    let histogram: PairTable | null = null;
    if (values.histogram !== undefined) {
      histogram = parseHistogramCsv(readText(values.histogram), values.histogram);
    }
    const scene = buildScene(histogram, density, values.title ?? null);
    svg = renderSvg(scene, {
      width: values.width === undefined ? undefined : positiveInt(values.width, "--width"),
      height: values.height === undefined ? undefined : positiveInt(values.height, "--height"),
    });
  } catch (error) {
    if (error instanceof CsvError || error instanceof RangeError) {
      io.stderr(`error: ${error.message}`);
      return 1;
    }
    throw error;
  }

  try {
    writeFileSync(values.out, svg);
  } catch (error) {
    io.stderr(`error: cannot write ${values.out}: ${(error as Error).message}`);
    return 2;
  }
  io.stdout(`wrote ${values.out}`);
  return 0;
}
