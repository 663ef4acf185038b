/**
 * Shared figure styling.
 *
 * Parity convention (same as the Python package documents): even sector
 * dashed crimson, odd sector solid slate gray. Anything drawing
 * parity-resolved curves must go through parityStroke so the convention
 * cannot drift between figures.
 */

export const PARITIES = ["even", "odd"] as const;
export type Parity = (typeof PARITIES)[number];

export interface Stroke {
  stroke: string;
  "stroke-width": string;
  "stroke-dasharray"?: string;
  fill: string;
}

export function parityStroke(parity: Parity, width = 1.4): Stroke {
  if (parity === "even") {
    return {
      stroke: "crimson",
      "stroke-width": width.toString(),
      "stroke-dasharray": "6 4",
      fill: "none",
    };
  }
  return { stroke: "slategray", "stroke-width": width.toString(), fill: "none" };
}

export function asParity(value: string, source = "parity"): Parity {
  if (value === "even" || value === "odd") return value;
  throw new Error(`${source}: expected "even" or "odd", got ${JSON.stringify(value)}`);
}

export const AXIS_COLOR = "#444444";
export const GRID_COLOR = "#dddddd";
export const TEXT_COLOR = "#222222";
export const ACCENT = "#1f4e79";
export const FONT = "11px sans-serif";
