import { mkdtempSync, readFileSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { fileURLToPath } from "node:url";
import { afterEach, describe, expect, it, vi } from "vitest";
import { UsageError, parseArgs, run } from "../src/cli.js";

const FIXTURES = fileURLToPath(new URL("./fixtures", import.meta.url));
const FIG1_PATHS = ["0.3", "1", "3", "10"].map((d) => join(FIXTURES, `fig1_deltaT_${d}.csv`));
const FIG2_PATHS = [join(FIXTURES, "fig2_muT_0.csv"), join(FIXTURES, "fig2_muT_1.csv")];

function tmpOut(name: string): string {
	return join(mkdtempSync(join(tmpdir(), "figcli-")), name);
}

afterEach(() => vi.restoreAllMocks());

describe("parseArgs", () => {
	it("parses the render command", () => {
		const a = parseArgs(["render", "--fig", "2", "--inputs", "a.csv", "b.csv", "--out", "x.svg", "--log-y"]);
		expect(a).toEqual({ fig: 2, inputs: ["a.csv", "b.csv"], out: "x.svg", logY: true });
	});

	it("rejects bad invocations", () => {
		expect(() => parseArgs([])).toThrow(UsageError);
		expect(() => parseArgs(["plot"])).toThrow(/unknown command/);
		expect(() => parseArgs(["render", "--fig", "3", "--inputs", "a", "--out", "b"])).toThrow(/--fig must be 1 or 2/);
		expect(() => parseArgs(["render", "--fig", "1", "--out", "b"])).toThrow(/--inputs/);
		expect(() => parseArgs(["render", "--fig", "1", "--inputs", "a"])).toThrow(/--out/);
		expect(() => parseArgs(["render", "--fig", "1", "--inputs", "a", "--out", "b", "--wat"])).toThrow(/unknown option/);
	});
});

describe("run", () => {
	it("renders figure 1 to the requested path", () => {
		const out = tmpOut("fig1.svg");
		const rc = run(["render", "--fig", "1", "--inputs", ...FIG1_PATHS, "--out", out]);
		expect(rc).toBe(0);
		const svg = readFileSync(out, "utf8");
		expect(svg.startsWith("<svg ")).toBe(true);
		expect(svg).toContain('class="panel"');
	});

	it("renders figure 2 and is byte-stable across runs", () => {
		const out1 = tmpOut("a.svg");
		const out2 = tmpOut("b.svg");
		expect(run(["render", "--fig", "2", "--inputs", ...FIG2_PATHS, "--out", out1])).toBe(0);
		expect(run(["render", "--fig", "2", "--inputs", ...FIG2_PATHS, "--out", out2])).toBe(0);
		expect(readFileSync(out1, "utf8")).toBe(readFileSync(out2, "utf8"));
	});

	it("returns 2 and names the column on a schema violation", () => {
		const err = vi.spyOn(console, "error").mockImplementation(() => {});
		const dir = mkdtempSync(join(tmpdir(), "figcli-"));
		const bad = join(dir, "bad.csv");
		writeFileSync(bad, "sweep_value,p_adiabatic_ode,error\n1,0.5,\n", "utf8");
		const rc = run(["render", "--fig", "1", "--inputs", bad, "--out", join(dir, "x.svg")]);
		expect(rc).toBe(2);
		expect(err.mock.calls.map((c) => c.join(" ")).join("\n")).toContain("p_ddp_sech");
	});

	it("returns 2 on an empty CSV", () => {
		const err = vi.spyOn(console, "error").mockImplementation(() => {});
		const dir = mkdtempSync(join(tmpdir(), "figcli-"));
		const empty = join(dir, "empty.csv");
		writeFileSync(empty, "", "utf8");
		const rc = run(["render", "--fig", "2", "--inputs", empty, "--out", join(dir, "x.svg")]);
		expect(rc).toBe(2);
		expect(err.mock.calls.map((c) => c.join(" ")).join("\n")).toContain("empty CSV");
	});

	it("returns 2 on usage errors", () => {
		vi.spyOn(console, "error").mockImplementation(() => {});
		expect(run(["render", "--fig", "9", "--inputs", "a", "--out", "b"])).toBe(2);
	});

	it("returns 1 when an input file does not exist", () => {
		vi.spyOn(console, "error").mockImplementation(() => {});
		const rc = run(["render", "--fig", "1", "--inputs", "/nonexistent.csv", "--out", tmpOut("x.svg")]);
		expect(rc).toBe(1);
	});

	it("warns about skipped error rows but still renders", () => {
		const warn = vi.spyOn(console, "warn").mockImplementation(() => {});
		const out = tmpOut("mixed.svg");
		const rc = run(["render", "--fig", "1", "--inputs", join(FIXTURES, "fig1_mixed_errors.csv"), "--out", out]);
		expect(rc).toBe(0);
		expect(warn.mock.calls[0][0]).toContain("skipped 2 row(s)");
		expect(readFileSync(out, "utf8")).toContain("series-marker");
	});

	it("renders both figures from sweep CSVs well inside the time budget", () => {
		const started = Date.now();
		expect(run(["render", "--fig", "1", "--inputs", ...FIG1_PATHS, "--out", tmpOut("f1.svg")])).toBe(0);
		expect(run(["render", "--fig", "2", "--inputs", ...FIG2_PATHS, "--out", tmpOut("f2.svg")])).toBe(0);
		expect(Date.now() - started).toBeLessThan(10_000);
	});
});
