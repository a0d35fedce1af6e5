import { scaleLinear, scaleLog } from "d3-scale";
import type { Point } from "./csv.js";
import { fmt, polylinePath, tag, text } from "./svg.js";

export interface PanelGeometry {
	width: number;
	height: number;
	margin: { top: number; right: number; bottom: number; left: number };
}

export const DEFAULT_GEOMETRY: PanelGeometry = {
	width: 340,
	height: 260,
	margin: { top: 30, right: 14, bottom: 44, left: 58 },
};

export interface Series {
	points: Point[];
	style: "markers" | "line";
	color: string;
	label: string;
}

export interface PanelSpec {
	title: string;
	xLabel: string;
	yLabel: string;
	series: Series[];
	logY: boolean;
	// fixed y range when every series fits it (probabilities); otherwise data-driven
	yDomainHint?: [number, number];
}

type AnyScale = ReturnType<typeof scaleLinear<number, number>> | ReturnType<typeof scaleLog<number, number>>;

function extent(values: number[]): [number, number] {
	let lo = Infinity;
	let hi = -Infinity;
	for (const v of values) {
		if (v < lo) lo = v;
		if (v > hi) hi = v;
	}
	if (!Number.isFinite(lo)) return [0, 1];
	if (lo === hi) return [lo - 0.5, hi + 0.5];
	return [lo, hi];
}

// log axes cannot include zero; drop non-positive points instead of distorting them
export function positiveOnly(points: Point[]): Point[] {
	return points.filter((p) => p.y > 0);
}

export function renderPanel(spec: PanelSpec, geom: PanelGeometry, originX: number, originY: number): string {
	const { margin } = geom;
	const innerW = geom.width - margin.left - margin.right;
	const innerH = geom.height - margin.top - margin.bottom;

	const series = spec.logY ? spec.series.map((s) => ({ ...s, points: positiveOnly(s.points) })) : spec.series;
	const xs = series.flatMap((s) => s.points.map((p) => p.x));
	const ys = series.flatMap((s) => s.points.map((p) => p.y));

	const x = scaleLinear().domain(extent(xs)).range([0, innerW]).nice();

	let y: AnyScale;
	if (spec.logY) {
		y = scaleLog().domain(extent(ys)).range([innerH, 0]).nice();
	} else {
		let dom = extent(ys);
		if (spec.yDomainHint && dom[0] >= spec.yDomainHint[0] && dom[1] <= spec.yDomainHint[1]) dom = spec.yDomainHint;
		y = scaleLinear().domain(dom).range([innerH, 0]).nice();
	}

	const xTicks = x.ticks(5);
	const yTicks = spec.logY ? y.ticks(4) : y.ticks(5);
	const xFmt = x.tickFormat(5);
	const yFmt = spec.logY ? y.tickFormat(4, "~g") : y.tickFormat(5);

	const parts: string[] = [];
	parts.push(tag("rect", { x: 0, y: 0, width: innerW, height: innerH, fill: "none", stroke: "#222", "stroke-width": 1 }));
	parts.push(text(innerW / 2, -10, spec.title, { "text-anchor": "middle", "font-size": 13 }));

	for (const t of xTicks) {
		const px = x(t);
		parts.push(tag("line", { x1: px, y1: innerH, x2: px, y2: innerH + 5, stroke: "#222" }));
		parts.push(text(px, innerH + 17, xFmt(t), { "text-anchor": "middle", "font-size": 10 }));
	}
	parts.push(text(innerW / 2, innerH + 34, spec.xLabel, { "text-anchor": "middle", "font-size": 12 }));

	for (const t of yTicks) {
		const py = y(t);
		parts.push(tag("line", { x1: -5, y1: py, x2: 0, y2: py, stroke: "#222" }));
		parts.push(text(-8, py + 3, yFmt(t), { "text-anchor": "end", "font-size": 10 }));
	}
	parts.push(
		tag(
			"g",
			{ transform: `translate(${fmt(-margin.left + 14)},${fmt(innerH / 2)})` },
			text(0, 0, spec.yLabel, { "text-anchor": "middle", "font-size": 12, transform: "rotate(-90)" }),
		),
	);

	for (const s of series) {
		const pts = s.points.map((p) => ({ x: x(p.x), y: y(p.y) }));
		if (s.style === "line") {
			if (pts.length > 0) {
				parts.push(tag("path", { class: "series-line", d: polylinePath(pts), fill: "none", stroke: s.color, "stroke-width": 1.5 }));
			}
		} else {
			const markers = pts
				.map((p) => tag("circle", { class: "series-marker", cx: p.x, cy: p.y, r: 2.6, fill: s.color }))
				.join("");
			parts.push(tag("g", {}, markers));
		}
	}

	return tag("g", { class: "panel", transform: `translate(${fmt(originX + margin.left)},${fmt(originY + margin.top)})` }, parts.join("\n"));
}

export function renderLegend(series: Series[], originX: number, originY: number): string {
	const parts: string[] = [];
	let dx = 0;
	for (const s of series) {
		if (s.style === "line") {
			parts.push(tag("line", { x1: dx, y1: -4, x2: dx + 22, y2: -4, stroke: s.color, "stroke-width": 1.5 }));
		} else {
			parts.push(tag("circle", { cx: dx + 11, cy: -4, r: 2.6, fill: s.color }));
		}
		parts.push(text(dx + 28, 0, s.label, { "font-size": 12 }));
		dx += 28 + 8 * s.label.length + 24;
	}
	return tag("g", { class: "legend", transform: `translate(${fmt(originX)},${fmt(originY)})` }, parts.join("\n"));
}
