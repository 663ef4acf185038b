/**
 * Minimal deterministic SVG builder.
 *
 * Strings only, no DOM: attributes are emitted in the order given and all
 * numbers should already be formatted (see fmt), so the same inputs always
 * produce byte-identical files.
 */

export type Attrs = Record<string, string>;

/** Fixed-precision number formatting; keeps files small and stable. */
export function fmt(v: number, digits = 2): string {
  if (!Number.isFinite(v)) throw new Error(`cannot format ${v}`);
  const s = v.toFixed(digits);
  return s === "-0." + "0".repeat(digits) ? s.slice(1) : s;
}

function attrString(attrs: Attrs): string {
  const parts = Object.entries(attrs).map(([k, v]) => `${k}="${escapeAttr(v)}"`);
  return parts.length > 0 ? " " + parts.join(" ") : "";
}

function escapeAttr(v: string): string {
  return v.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/"/g, "&quot;");
}

export function escapeText(v: string): string {
  return v.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

export function el(tag: string, attrs: Attrs, children: string[] = []): string {
  if (children.length === 0) return `<${tag}${attrString(attrs)}/>`;
  return `<${tag}${attrString(attrs)}>${children.join("")}</${tag}>`;
}

export function text(content: string, attrs: Attrs): string {
  return `<text${attrString(attrs)}>${escapeText(content)}</text>`;
}

export function polylinePoints(pts: [number, number][]): string {
  return pts.map(([x, y]) => `${fmt(x)},${fmt(y)}`).join(" ");
}

export function document(width: number, height: number, children: string[]): string {
  const open =
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" ` +
    `viewBox="0 0 ${width} ${height}">`;
  return [open, ...children, "</svg>", ""].join("\n");
}

// ── Linear axes ──────────────────────────────────────────────────────────

export interface Scale {
  (v: number): number;
  domain: [number, number];
  range: [number, number];
}

export function linearScale(domain: [number, number], range: [number, number]): Scale {
  const [d0, d1] = domain;
  const [r0, r1] = range;
  const span = d1 - d0 || 1;
  const scale = ((v: number) => r0 + ((v - d0) / span) * (r1 - r0)) as Scale;
  scale.domain = domain;
  scale.range = range;
  return scale;
}

/** Round-ish tick positions: count evenly spaced values across the domain. */
export function ticks(domain: [number, number], count: number): number[] {
  const [a, b] = domain;
  const out: number[] = [];
  for (let i = 0; i < count; i++) out.push(a + ((b - a) * i) / (count - 1));
  return out;
}

export function tickLabel(v: number): string {
  if (v === 0) return "0";
  const a = Math.abs(v);
  if (a >= 1e4 || a < 1e-3) return v.toExponential(1);
  return parseFloat(v.toPrecision(4)).toString();
}
