export function esc(s: string): string {
	return s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;").replace(/"/g, "&quot;");
}

export function fmt(v: number): string {
	// short, locale-independent coordinate text
	return String(+v.toPrecision(6));
}

export function tag(name: string, attrs: Record<string, string | number>, children?: string): string {
	const parts = Object.entries(attrs).map(([k, v]) => `${k}="${typeof v === "number" ? fmt(v) : esc(v)}"`);
	const open = `<${name}${parts.length ? " " + parts.join(" ") : ""}`;
	return children === undefined ? `${open}/>` : `${open}>${children}</${name}>`;
}

export function text(x: number, y: number, s: string, attrs: Record<string, string | number> = {}): string {
	return tag("text", { x, y, ...attrs }, esc(s));
}

export function polylinePath(points: { x: number; y: number }[]): string {
	return points.map((p, i) => `${i === 0 ? "M" : "L"}${fmt(p.x)},${fmt(p.y)}`).join("");
}

export function svgDocument(width: number, height: number, body: string): string {
	return (
		`<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" ` +
		`viewBox="0 0 ${width} ${height}" font-family="Helvetica, Arial, sans-serif">\n` +
		`<rect width="${width}" height="${height}" fill="white"/>\n` +
		body +
		`\n</svg>\n`
	);
}
