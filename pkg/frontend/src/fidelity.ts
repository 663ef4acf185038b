/**
 * Fidelity panel.
 *
 * Input: the `scan` subcommand's main table (param, ground_energy,
 * fidelity, d1, d2, min_parity_gap) and optionally its levels sidecar
 * (param, index, energy, parity).  Output: stacked panels sharing the x
 * axis: ground-state fidelity, minimal even/odd gap on a log scale, and,
 * when the sidecar is present, the lowest levels per parity drawn in the
 * documented parity styling.
 */

import { Table, numbers, requireColumns, strings } from "./csv";
import { AXIS_COLOR, GRID_COLOR, TEXT_COLOR, ACCENT, asParity, parityStroke } from "./style";
import { Scale, document, el, fmt, linearScale, polylinePoints, text, tickLabel, ticks } from "./svg";

const W = 520;
const PANEL_H = 150;
const GAP_V = 34;
const ML = 64;
const MR = 16;
const MT = 40;

interface Panel {
  y0: number;
  ylabel: string;
  children: string[];
}

function frame(panel: Panel, x: Scale, y: Scale, ylabels: [number, string][]): string[] {
  const out: string[] = [];
  out.push(
    el("rect", {
      x: fmt(ML),
      y: fmt(panel.y0),
      width: fmt(W - ML - MR),
      height: fmt(PANEL_H),
      stroke: AXIS_COLOR,
      "stroke-width": "0.8",
      fill: "none",
    }),
  );
  for (const tv of ticks(x.domain, 6)) {
    const sx = x(tv);
    out.push(
      el("line", {
        x1: fmt(sx),
        y1: fmt(panel.y0),
        x2: fmt(sx),
        y2: fmt(panel.y0 + PANEL_H),
        stroke: GRID_COLOR,
        "stroke-width": "0.6",
      }),
      text(tickLabel(tv), {
        x: fmt(sx),
        y: fmt(panel.y0 + PANEL_H + 14),
        "text-anchor": "middle",
        "font-family": "sans-serif",
        "font-size": "10",
        fill: AXIS_COLOR,
      }),
    );
  }
  for (const [vy, label] of ylabels) {
    out.push(
      el("line", {
        x1: fmt(ML),
        y1: fmt(vy),
        x2: fmt(W - MR),
        y2: fmt(vy),
        stroke: GRID_COLOR,
        "stroke-width": "0.6",
      }),
      text(label, {
        x: fmt(ML - 6),
        y: fmt(vy + 3),
        "text-anchor": "end",
        "font-family": "sans-serif",
        "font-size": "10",
        fill: AXIS_COLOR,
      }),
    );
  }
  out.push(
    text(panel.ylabel, {
      x: fmt(14),
      y: fmt(panel.y0 + PANEL_H / 2),
      "text-anchor": "middle",
      "font-family": "sans-serif",
      "font-size": "11",
      fill: TEXT_COLOR,
      transform: `rotate(-90 14 ${fmt(panel.y0 + PANEL_H / 2)})`,
    }),
  );
  return out;
}

function pad(lo: number, hi: number, frac = 0.06): [number, number] {
  const span = hi - lo || Math.abs(hi) || 1;
  return [lo - span * frac, hi + span * frac];
}

function line(xs: number[], vals: number[], x: Scale, y: Scale, stroke: Record<string, string>): string {
  const pts: [number, number][] = xs.map((v, i) => [x(v), y(vals[i]!)]);
  return el("polyline", { points: polylinePoints(pts), ...stroke });
}

export function renderFidelityPanel(
  scan: Table,
  levels: Table | null = null,
  source = "scan table",
): string {
  requireColumns(scan, ["param", "fidelity", "min_parity_gap"], source);
  const params = numbers(scan, "param", source);
  const fid = numbers(scan, "fidelity", source);
  const gaps = numbers(scan, "min_parity_gap", source);
  if (params.length < 2) throw new Error(`${source}: need at least two scan points`);

  const panels = levels ? 3 : 2;
  const H = MT + panels * (PANEL_H + GAP_V);
  const x = linearScale([params[0]!, params[params.length - 1]!], [ML, W - MR]);
  const children: string[] = [];

  const grid = scan.meta.grid;
  const pname =
    grid && typeof grid === "object" && "param" in (grid as Record<string, unknown>)
      ? String((grid as Record<string, unknown>).param)
      : "parameter";
  const model = typeof scan.meta.model === "string" ? scan.meta.model : "";
  const tj = typeof scan.meta.twice_j === "number" ? `, 2j = ${scan.meta.twice_j}` : "";
  children.push(
    text(`ground-state fidelity scan: ${model}${tj}`, {
      x: fmt(W / 2),
      y: "22",
      "text-anchor": "middle",
      "font-family": "sans-serif",
      "font-size": "14",
      fill: TEXT_COLOR,
    }),
  );

  // ── fidelity ───────────────────────────────────────────────────────────
  let y0 = MT;
  {
    const [lo, hi] = pad(Math.min(...fid), Math.max(...fid, 1));
    const y = linearScale([hi, lo], [y0, y0 + PANEL_H]);
    const labels: [number, string][] = ticks([lo, hi], 4).map((v) => [y(v), tickLabel(v)]);
    children.push(...frame({ y0, ylabel: "fidelity", children: [] }, x, y, labels));
    children.push(line(params, fid, x, y, { stroke: ACCENT, "stroke-width": "1.6", fill: "none" }));
  }

  // ── parity gap, log scale ──────────────────────────────────────────────
  y0 += PANEL_H + GAP_V;
  {
    const floor = 1e-14;
    const logs = gaps.map((g) => Math.log10(Math.max(g, floor)));
    const [lo, hi] = pad(Math.min(...logs), Math.max(...logs));
    const y = linearScale([hi, lo], [y0, y0 + PANEL_H]);
    const labels: [number, string][] = ticks([lo, hi], 4).map((v) => [
      y(v),
      `1e${Math.round(v)}`,
    ]);
    children.push(...frame({ y0, ylabel: "min parity gap", children: [] }, x, y, labels));
    children.push(line(params, logs, x, y, { stroke: ACCENT, "stroke-width": "1.6", fill: "none" }));
  }

  // ── lowest levels per parity ───────────────────────────────────────────
  if (levels) {
    y0 += PANEL_H + GAP_V;
    requireColumns(levels, ["param", "index", "energy", "parity"], "levels table");
    const lp = numbers(levels, "param", "levels table");
    const le = numbers(levels, "energy", "levels table");
    const li = numbers(levels, "index", "levels table");
    const lpar = strings(levels, "parity", "levels table");

    const series = new Map<string, { parity: "even" | "odd"; xs: number[]; es: number[] }>();
    for (let i = 0; i < lp.length; i++) {
      const parity = asParity(lpar[i]!, "levels table");
      const key = `${parity}:${li[i]}`;
      if (!series.has(key)) series.set(key, { parity, xs: [], es: [] });
      const s = series.get(key)!;
      s.xs.push(lp[i]!);
      s.es.push(le[i]!);
    }

    const [lo, hi] = pad(Math.min(...le), Math.max(...le));
    const y = linearScale([hi, lo], [y0, y0 + PANEL_H]);
    const labels: [number, string][] = ticks([lo, hi], 4).map((v) => [y(v), tickLabel(v)]);
    children.push(...frame({ y0, ylabel: "energy", children: [] }, x, y, labels));
    for (const key of [...series.keys()].sort()) {
      const s = series.get(key)!;
      children.push(line(s.xs, s.es, x, y, parityStroke(s.parity) as unknown as Record<string, string>));
    }
    // legend inside the levels panel
    const lx = W - MR - 120;
    const ly = y0 + 16;
    children.push(
      el("line", { x1: fmt(lx), y1: fmt(ly), x2: fmt(lx + 28), y2: fmt(ly), ...parityStroke("even") }),
      text("even", {
        x: fmt(lx + 34),
        y: fmt(ly + 4),
        "font-family": "sans-serif",
        "font-size": "10",
        fill: TEXT_COLOR,
      }),
      el("line", { x1: fmt(lx), y1: fmt(ly + 16), x2: fmt(lx + 28), y2: fmt(ly + 16), ...parityStroke("odd") }),
      text("odd", {
        x: fmt(lx + 34),
        y: fmt(ly + 20),
        "font-family": "sans-serif",
        "font-size": "10",
        fill: TEXT_COLOR,
      }),
    );
  }

  children.push(
    text(pname, {
      x: fmt(W / 2),
      y: fmt(MT + panels * (PANEL_H + GAP_V) - 6),
      "text-anchor": "middle",
      "font-family": "sans-serif",
      "font-size": "11",
      fill: TEXT_COLOR,
    }),
  );
  return document(W, H, children);
}
