export {
  CsvError,
  DENSITY_HEADER,
  HISTOGRAM_HEADER,
  parseDensityCsv,
  parseHistogramCsv,
  parsePairsCsv,
} from "./csv.js";
export type { PairRow, PairTable } from "./csv.js";
export { buildScene, ticks } from "./scene.js";
export type { Bar, Scene } from "./scene.js";
export { renderSvg } from "./svg.js";
export type { RenderOptions } from "./svg.js";
export { runCli, USAGE } from "./cli.js";
export type { CliIo } from "./cli.js";
