import { writeFileSync } from "node:fs";
import { pathToFileURL } from "node:url";
import { SchemaError } from "./csv.js";
import { renderFig1FromPaths } from "./fig1.js";
import { renderFig2FromPaths } from "./fig2.js";

const USAGE = "usage: superddp-figures render --fig 1|2 --inputs <csv...> --out <path> [--log-y]";

interface Args {
	fig: 1 | 2;
	inputs: string[];
	out: string;
	logY: boolean;
}

export function parseArgs(argv: string[]): Args {
	if (argv[0] !== "render") throw new UsageError(`unknown command: ${argv[0] ?? "(none)"}`);
	let fig: number | undefined;
	const inputs: string[] = [];
	let out: string | undefined;
	let logY = false;

	let i = 1;
	while (i < argv.length) {
		const a = argv[i];
		if (a === "--fig") {
			fig = Number(argv[++i]);
			i += 1;
		} else if (a === "--inputs") {
			i += 1;
			while (i < argv.length && !argv[i].startsWith("--")) inputs.push(argv[i++]);
		} else if (a === "--out") {
			out = argv[++i];
			i += 1;
		} else if (a === "--log-y") {
			logY = true;
			i += 1;
		} else {
			throw new UsageError(`unknown option: ${a}`);
		}
	}

	if (fig !== 1 && fig !== 2) throw new UsageError("--fig must be 1 or 2");
	if (inputs.length === 0) throw new UsageError("--inputs requires at least one CSV path");
	if (!out) throw new UsageError("--out is required");
	return { fig, inputs, out, logY };
}

export class UsageError extends Error {}

export function run(argv: string[]): number {
	try {
		const args = parseArgs(argv);
		const svg =
			args.fig === 1
				? renderFig1FromPaths(args.inputs, { logY: args.logY })
				: renderFig2FromPaths(args.inputs, { logY: args.logY });
		writeFileSync(args.out, svg, "utf8");
		return 0;
	} catch (err) {
		if (err instanceof UsageError) {
			console.error(String(err.message));
			console.error(USAGE);
			return 2;
		}
		if (err instanceof SchemaError) {
			console.error(`schema error: ${err.message}`);
			return 2;
		}
		console.error(err instanceof Error ? err.message : String(err));
		return 1;
	}
}

const invokedDirectly =
	typeof process.argv[1] === "string" && import.meta.url === pathToFileURL(process.argv[1]).href;
if (invokedDirectly) process.exit(run(process.argv.slice(2)));
