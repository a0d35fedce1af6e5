import { FIG1_COLUMNS, loadSweepCsv, xySeries } from "./csv.js";
import type { SweepTable } from "./csv.js";
import { DEFAULT_GEOMETRY, renderLegend, renderPanel } from "./panel.js";
import type { Series } from "./panel.js";
import { svgDocument } from "./svg.js";

export interface FigOptions {
	logY?: boolean;
}

const ODE_COLOR = "#1f77b4";
const SECH_COLOR = "#d62728";

function panelTitle(table: SweepTable): string {
	const d = Number(table.meta.deltaT);
	if (Number.isFinite(d)) return `ΔT = ${d}`;
	return table.path.split("/").pop() ?? table.path;
}

// one panel per input sweep; ODE result as markers, sech closed form as a line
export function renderFig1(tables: SweepTable[], opts: FigOptions = {}): string {
	const logY = opts.logY ?? false;
	const ordered = [...tables];
	if (ordered.every((t) => Number.isFinite(Number(t.meta.deltaT)))) {
		ordered.sort((a, b) => Number(a.meta.deltaT) - Number(b.meta.deltaT));
	}

	const geom = DEFAULT_GEOMETRY;
	const cols = Math.min(2, ordered.length);
	const rows = Math.ceil(ordered.length / cols);
	const legendH = 26;
	const width = cols * geom.width;
	const height = rows * geom.height + legendH;

	const legendSeries: Series[] = [
		{ points: [], style: "markers", color: ODE_COLOR, label: "ode" },
		{ points: [], style: "line", color: SECH_COLOR, label: "ddp-sech" },
	];

	const parts: string[] = [renderLegend(legendSeries, geom.margin.left, 18)];
	ordered.forEach((table, i) => {
		const series: Series[] = [
			{ points: xySeries(table, "sweep_value", "p_adiabatic_ode"), style: "markers", color: ODE_COLOR, label: "ode" },
			{ points: xySeries(table, "sweep_value", "p_ddp_sech"), style: "line", color: SECH_COLOR, label: "ddp-sech" },
		];
		const originX = (i % cols) * geom.width;
		const originY = legendH + Math.floor(i / cols) * geom.height;
		parts.push(
			renderPanel(
				{
					title: panelTitle(table),
					xLabel: "Ω₀T",
					yLabel: "P",
					series,
					logY,
					yDomainHint: [0, 1],
				},
				geom,
				originX,
				originY,
			),
		);
	});

	return svgDocument(width, height, parts.join("\n"));
}

export function renderFig1FromPaths(paths: string[], opts: FigOptions = {}): string {
	return renderFig1(paths.map((p) => loadSweepCsv(p, FIG1_COLUMNS)), opts);
}
