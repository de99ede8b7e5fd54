/**
 * Layout math turning parsed CSV tables into a drawable scene: bar
 * geometry, axis ranges spanning the union of inputs, and tick marks.
 * No statistics happen here; every plotted number comes from the files.
 */

import type { PairRow, PairTable } from "./csv.js";

export interface Bar {
  center: number;
  width: number;
  height: number;
}

export interface Scene {
  title: string | null;
  bars: Bar[];
  curve: PairRow[];
  xRange: readonly [number, number];
  yRange: readonly [number, number];
  xTicks: number[];
  yTicks: number[];
}

function binWidth(centers: number[]): number {
  if (centers.length < 2) {
    return 1.0;
  }
  let smallest = Infinity;
  for (let i = 1; i < centers.length; i++) {
    const gap = centers[i] - centers[i - 1];
    if (gap > 0 && gap < smallest) {
      smallest = gap;
    }
  }
  return Number.isFinite(smallest) ? smallest : 1.0;
}

/** Round tick positions covering [lo, hi] with a 1/2/5 step. */
export function ticks(lo: number, hi: number, target = 6): number[] {
  const span = hi - lo;
  if (!(span > 0)) {
    return [lo];
  }
  const rawStep = span / target;
  const magnitude = Math.pow(10, Math.floor(Math.log10(rawStep)));
  let step = magnitude;
  for (const multiple of [1, 2, 5, 10]) {
    step = multiple * magnitude;
    if (step >= rawStep) {
      break;
    }
  }
  const out: number[] = [];
  for (let v = Math.ceil(lo / step) * step; v <= hi + step * 1e-9; v += step) {
    // snap tiny float drift so labels read cleanly
    out.push(Math.abs(v) < step * 1e-9 ? 0 : v);
  }
  return out;
}

export function buildScene(
  histogram: PairTable | null,
  density: PairTable,
  title: string | null,
): Scene {
  const bars: Bar[] = [];
  let xLo = Infinity;
  let xHi = -Infinity;
  let yHi = 0;

  if (histogram !== null && histogram.rows.length > 0) {
    const centers = histogram.rows.map((row) => row.x);
    const width = binWidth(centers);
    for (const row of histogram.rows) {
      if (row.y < 0) {
        throw new RangeError(`histogram density must be nonnegative, got ${row.y}`);
      }
      bars.push({ center: row.x, width, height: row.y });
      xLo = Math.min(xLo, row.x - width / 2);
      xHi = Math.max(xHi, row.x + width / 2);
      yHi = Math.max(yHi, row.y);
    }
  }

  for (const row of density.rows) {
    xLo = Math.min(xLo, row.x);
    xHi = Math.max(xHi, row.x);
    yHi = Math.max(yHi, row.y);
  }

  if (!(xHi > xLo)) {
    xLo -= 0.5;
    xHi += 0.5;
  }
  if (yHi <= 0) {
    yHi = 1.0;
  }
  const xPad = 0.02 * (xHi - xLo);
  const xRange = [xLo - xPad, xHi + xPad] as const;
  const yRange = [0, 1.05 * yHi] as const;

  return {
    title,
    bars,
    curve: density.rows,
    xRange,
    yRange,
    xTicks: ticks(xRange[0], xRange[1]),
    yTicks: ticks(yRange[0], yRange[1]),
  };
}
