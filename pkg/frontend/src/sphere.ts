/**
 * Sphere constellation figure.
 *
 * Input: the `sphere` subcommand's table (columns level, zero_re, zero_im,
 * x, y, z) holding unit-sphere points of one or more wavefunctions.
 * Output: an orthographic view with a light wireframe; points on the far
 * hemisphere are dimmed instead of hidden so the count stays readable.
 */

import { Table, numbers, requireColumns } from "./csv";
import { AXIS_COLOR, GRID_COLOR, TEXT_COLOR } from "./style";
import { document, el, fmt, polylinePoints, text } from "./svg";

const W = 420;
const H = 450;
const CX = W / 2;
const CY = 210;
const R = 160;
const TILT = 0.42; // radians about the x-axis, north pole toward viewer

interface Projected {
  sx: number;
  sy: number;
  depth: number;
}

function project(x: number, y: number, z: number): Projected {
  const c = Math.cos(TILT);
  const s = Math.sin(TILT);
  const depth = y * c - z * s;
  const up = y * s + z * c;
  return { sx: CX + R * x, sy: CY - R * up, depth };
}

function circlePath(point: (t: number) => [number, number, number], n = 72): string {
  const pts: [number, number][] = [];
  for (let i = 0; i <= n; i++) {
    const p = project(...point((2 * Math.PI * i) / n));
    pts.push([p.sx, p.sy]);
  }
  return polylinePoints(pts);
}

function wireframe(): string[] {
  const out: string[] = [];
  for (let k = 0; k < 6; k++) {
    const phi = (k * Math.PI) / 6;
    out.push(
      el("polyline", {
        points: circlePath((t) => [
          Math.sin(t) * Math.cos(phi),
          Math.sin(t) * Math.sin(phi),
          Math.cos(t),
        ]),
        stroke: GRID_COLOR,
        "stroke-width": "0.6",
        fill: "none",
      }),
    );
  }
  for (const z0 of [-0.67, -0.33, 0, 0.33, 0.67]) {
    const r = Math.sqrt(1 - z0 * z0);
    out.push(
      el("polyline", {
        points: circlePath((t) => [r * Math.cos(t), r * Math.sin(t), z0]),
        stroke: z0 === 0 ? AXIS_COLOR : GRID_COLOR,
        "stroke-width": z0 === 0 ? "0.8" : "0.6",
        "stroke-opacity": z0 === 0 ? "0.6" : "1",
        fill: "none",
      }),
    );
  }
  out.push(
    el("circle", {
      cx: fmt(CX),
      cy: fmt(CY),
      r: fmt(R),
      stroke: AXIS_COLOR,
      "stroke-width": "1",
      fill: "none",
    }),
  );
  return out;
}

function describe(table: Table): string {
  const meta = table.meta;
  const bits: string[] = [];
  if (typeof meta.model === "string") bits.push(meta.model);
  if (typeof meta.twice_j === "number") bits.push(`2j = ${meta.twice_j}`);
  const params = meta.params;
  if (params && typeof params === "object") {
    for (const [k, v] of Object.entries(params as Record<string, unknown>)) {
      bits.push(`${k} = ${v}`);
    }
  }
  const levels = new Set(table.rows.map((r) => r.level));
  if (levels.size === 1) bits.push(`level ${[...levels][0]}`);
  return bits.join(", ");
}

export function renderSphere(table: Table, source = "sphere table"): string {
  requireColumns(table, ["level", "x", "y", "z"], source);
  const xs = numbers(table, "x", source);
  const ys = numbers(table, "y", source);
  const zs = numbers(table, "z", source);

  const front: string[] = [];
  const back: string[] = [];
  for (let i = 0; i < xs.length; i++) {
    const p = project(xs[i]!, ys[i]!, zs[i]!);
    const target = p.depth <= 0 ? front : back;
    target.push(
      el("circle", {
        class: "pt",
        cx: fmt(p.sx),
        cy: fmt(p.sy),
        r: p.depth <= 0 ? "4.2" : "3.2",
        fill: "crimson",
        "fill-opacity": p.depth <= 0 ? "1" : "0.35",
        stroke: "white",
        "stroke-width": "0.6",
      }),
    );
  }

  const children = [
    text("wavefunction zeros on the sphere", {
      x: fmt(CX),
      y: "24",
      "text-anchor": "middle",
      "font-family": "sans-serif",
      "font-size": "14",
      fill: TEXT_COLOR,
    }),
    text(describe(table), {
      x: fmt(CX),
      y: "42",
      "text-anchor": "middle",
      "font-family": "sans-serif",
      "font-size": "11",
      fill: AXIS_COLOR,
    }),
    ...back,
    ...wireframe(),
    ...front,
    text(`${xs.length} points`, {
      x: fmt(CX),
      y: fmt(H - 14),
      "text-anchor": "middle",
      "font-family": "sans-serif",
      "font-size": "11",
      fill: AXIS_COLOR,
    }),
  ];
  return document(W, H, children);
}
