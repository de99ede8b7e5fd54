/**
 * SVG emission. Bars and the density curve are written in data
 * coordinates inside a single transformed group, so the polyline's
 * points attribute carries the CSV's numeric tokens verbatim; only the
 * group transform (and the screen-space axes) know about pixels.
 */

import type { Scene } from "./scene.js";

export interface RenderOptions {
  width?: number;
  height?: number;
}

const BAR_FILL = "#9ecae1";
const BAR_EDGE = "#4292c6";
const CURVE_STROKE = "#d62728";
const AXIS_STROKE = "#333333";

function escapeXml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;")
    .replace(/'/g, "&apos;");
}

function formatTick(value: number): string {
  if (value === 0) {
    return "0";
  }
  const rounded = Number(value.toPrecision(10));
  return String(rounded);
}

export function renderSvg(scene: Scene, options: RenderOptions = {}): string {
  const width = options.width ?? 760;
  const height = options.height ?? 480;
  const margin = {
    top: scene.title === null ? 24 : 52,
    right: 20,
    bottom: 46,
    left: 64,
  };
  const plotW = width - margin.left - margin.right;
  const plotH = height - margin.top - margin.bottom;
  if (plotW <= 0 || plotH <= 0) {
    throw new RangeError(`image ${width}x${height} leaves no plot area`);
  }

  const [x0, x1] = scene.xRange;
  const [y0, y1] = scene.yRange;
  const sx = plotW / (x1 - x0);
  const sy = plotH / (y1 - y0);
  const toScreenX = (x: number) => margin.left + (x - x0) * sx;
  const toScreenY = (y: number) => margin.top + plotH - (y - y0) * sy;
  const transform =
    `translate(${margin.left - x0 * sx},${margin.top + plotH + y0 * sy}) ` +
    `scale(${sx},${-sy})`;

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" ` +
      `viewBox="0 0 ${width} ${height}" font-family="sans-serif">`,
  );
  parts.push(`<rect width="${width}" height="${height}" fill="white"/>`);

  if (scene.title !== null) {
    parts.push(
      `<text x="${width / 2}" y="30" text-anchor="middle" font-size="17" ` +
        `fill="${AXIS_STROKE}" class="title">${escapeXml(scene.title)}</text>`,
    );
  }

  // data-space group: geometry below carries raw data coordinates
  parts.push(`<g class="data" transform="${transform}">`);
  for (const bar of scene.bars) {
    parts.push(
      `<rect class="bar" x="${bar.center - bar.width / 2}" y="0" ` +
        `width="${bar.width}" height="${bar.height}" fill="${BAR_FILL}" ` +
        `stroke="${BAR_EDGE}" stroke-width="0.75" vector-effect="non-scaling-stroke"/>`,
    );
  }
  const points = scene.curve.map((row) => `${row.rawX},${row.rawY}`).join(" ");
  parts.push(
    `<polyline class="density-curve" points="${points}" fill="none" ` +
      `stroke="${CURVE_STROKE}" stroke-width="1.8" vector-effect="non-scaling-stroke"/>`,
  );
  parts.push("</g>");

  // axes in screen space
  const axisY = margin.top + plotH;
  parts.push(
    `<line x1="${margin.left}" y1="${axisY}" x2="${margin.left + plotW}" ` +
      `y2="${axisY}" stroke="${AXIS_STROKE}"/>`,
  );
  parts.push(
    `<line x1="${margin.left}" y1="${margin.top}" x2="${margin.left}" ` +
      `y2="${axisY}" stroke="${AXIS_STROKE}"/>`,
  );
  for (const tick of scene.xTicks) {
    const x = toScreenX(tick);
    parts.push(`<line x1="${x}" y1="${axisY}" x2="${x}" y2="${axisY + 5}" stroke="${AXIS_STROKE}"/>`);
    parts.push(
      `<text x="${x}" y="${axisY + 20}" text-anchor="middle" font-size="12" ` +
        `fill="${AXIS_STROKE}">${formatTick(tick)}</text>`,
    );
  }
  for (const tick of scene.yTicks) {
    const y = toScreenY(tick);
    parts.push(`<line x1="${margin.left - 5}" y1="${y}" x2="${margin.left}" y2="${y}" stroke="${AXIS_STROKE}"/>`);
    parts.push(
      `<text x="${margin.left - 9}" y="${y + 4}" text-anchor="end" font-size="12" ` +
        `fill="${AXIS_STROKE}">${formatTick(tick)}</text>`,
    );
  }

  parts.push("</svg>");
  return parts.join("\n") + "\n";
}
