import { readFileSync } from "node:fs";
import Papa from "papaparse";

export class SchemaError extends Error {}

export interface SweepTable {
	path: string;
	meta: Record<string, string>;
	rows: Record<string, string>[];
	skippedErrorRows: number;
}

export const FIG1_COLUMNS = ["sweep_value", "p_adiabatic_ode", "p_ddp_sech", "error"];
export const FIG2_COLUMNS = ["sweep_value", "ln_one_minus_p", "error"];

// header comments look like "# key = value"; lines without "=" are ignored
export function parseMeta(text: string): Record<string, string> {
	const meta: Record<string, string> = {};
	for (const line of text.split(/\r?\n/)) {
		if (!line.startsWith("#")) continue;
		const m = /^#\s*([A-Za-z0-9_]+)\s*=\s*(.*)$/.exec(line);
		if (m) meta[m[1]] = m[2].trim();
	}
	return meta;
}

export function loadSweepCsv(path: string, requiredColumns: string[]): SweepTable {
	const text = readFileSync(path, "utf8");
	if (text.trim() === "") throw new SchemaError(`${path}: empty CSV`);

	const parsed = Papa.parse<Record<string, string>>(text, {
		header: true,
		comments: "#",
		skipEmptyLines: true,
	});
	const fields = parsed.meta.fields ?? [];
	if (fields.length === 0 || parsed.data.length === 0) {
		throw new SchemaError(`${path}: empty CSV (no header or no data rows)`);
	}

	const missing = requiredColumns.filter((c) => !fields.includes(c));
	if (missing.length > 0) {
		throw new SchemaError(`${path}: missing required column(s): ${missing.join(", ")}`);
	}

	const rows: Record<string, string>[] = [];
	let skipped = 0;
	for (const row of parsed.data) {
		if ((row.error ?? "").trim() !== "") skipped += 1;
		else rows.push(row);
	}
	if (skipped > 0) console.warn(`${path}: skipped ${skipped} row(s) with error set`);
	if (rows.length === 0) {
		throw new SchemaError(`${path}: all ${skipped} data rows carry errors; nothing to plot`);
	}

	return { path, meta: parseMeta(text), rows, skippedErrorRows: skipped };
}

export interface Point {
	x: number;
	y: number;
}

// pairs two columns, drops rows where either value is blank or non-finite
export function xySeries(table: SweepTable, xCol: string, yCol: string): Point[] {
	const pts: Point[] = [];
	for (const row of table.rows) {
		const x = row[xCol] === "" || row[xCol] === undefined ? NaN : Number(row[xCol]);
		const y = row[yCol] === "" || row[yCol] === undefined ? NaN : Number(row[yCol]);
		if (Number.isFinite(x) && Number.isFinite(y)) pts.push({ x, y });
	}
	pts.sort((a, b) => a.x - b.x);
	return pts;
}
