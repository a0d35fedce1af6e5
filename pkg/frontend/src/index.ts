export { FIG1_COLUMNS, FIG2_COLUMNS, SchemaError, loadSweepCsv, parseMeta, xySeries } from "./csv.js";
export type { Point, SweepTable } from "./csv.js";
export { renderFig1, renderFig1FromPaths } from "./fig1.js";
export type { FigOptions } from "./fig1.js";
export { renderFig2, renderFig2FromPaths } from "./fig2.js";
export { run, parseArgs, UsageError } from "./cli.js";
