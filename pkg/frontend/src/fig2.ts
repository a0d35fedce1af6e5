import { FIG2_COLUMNS, loadSweepCsv, xySeries } from "./csv.js";
import type { Point, SweepTable } from "./csv.js";
import { DEFAULT_GEOMETRY, renderLegend, renderPanel } from "./panel.js";
import type { Series } from "./panel.js";
import { svgDocument } from "./svg.js";
import type { FigOptions } from "./fig1.js";

const PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd"];

function curveLabel(table: SweepTable): string {
	const mu = Number(table.meta.muT);
	if (!Number.isFinite(mu)) return table.path.split("/").pop() ?? table.path;
	return mu === 0 ? "optimized (muT = 0)" : `deviated (muT = ${mu})`;
}

// ln(1 - P) per curve; the column is non-positive, so the logY view plots its
// magnitude |ln(1 - P)| on a log axis (spans many decades at large sweep values)
export function renderFig2(tables: SweepTable[], opts: FigOptions = {}): string {
	const logY = opts.logY ?? false;
	const ordered = [...tables];
	if (ordered.every((t) => Number.isFinite(Number(t.meta.muT)))) {
		ordered.sort((a, b) => Number(a.meta.muT) - Number(b.meta.muT));
	}

	const series: Series[] = ordered.map((table, i) => {
		let points: Point[] = xySeries(table, "sweep_value", "ln_one_minus_p");
		if (logY) points = points.map((p) => ({ x: p.x, y: Math.abs(p.y) }));
		return { points, style: "line", color: PALETTE[i % PALETTE.length], label: curveLabel(table) };
	});

	const geom = { ...DEFAULT_GEOMETRY, width: 520, height: 360 };
	const legendH = 26;
	const title = ordered[0]?.meta.family ? `family = ${ordered[0].meta.family}` : "";
	const panel = renderPanel(
		{
			title,
			xLabel: "Ω₀T",
			yLabel: logY ? "|ln(1 - P)|" : "ln(1 - P)",
			series,
			logY,
		},
		geom,
		0,
		legendH,
	);

	const legend = renderLegend(series.map((s) => ({ ...s, points: [] })), geom.margin.left, 18);
	return svgDocument(geom.width, geom.height + legendH, [legend, panel].join("\n"));
}

export function renderFig2FromPaths(paths: string[], opts: FigOptions = {}): string {
	return renderFig2(paths.map((p) => loadSweepCsv(p, FIG2_COLUMNS)), opts);
}
