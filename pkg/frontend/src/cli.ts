/**
 * Figure regeneration entry point.
 *
 *   node dist/cli.js sphere   [--samples DIR] [--out DIR]
 *   node dist/cli.js fidelity [--samples DIR] [--out DIR]
 *   node dist/cli.js all      [--samples DIR] [--out DIR]
 *
 * Reads the shipped qesspin CSVs from the samples directory and writes
 * sphere.svg / fidelity.svg into the output directory.
 */

import { existsSync, mkdirSync, writeFileSync } from "fs";
import { join, resolve } from "path";
import yargs from "yargs";
import { hideBin } from "yargs/helpers";

import { readTable } from "./csv";
import { renderFidelityPanel } from "./fidelity";
import { renderSphere } from "./sphere";

export interface FigureJob {
  samples: string;
  out: string;
}

export function makeSphereFigure(job: FigureJob): string {
  const src = join(job.samples, "sphere_rotor.csv");
  const svg = renderSphere(readTable(src), src);
  const dest = join(job.out, "sphere.svg");
  writeFileSync(dest, svg);
  return dest;
}

export function makeFidelityFigure(job: FigureJob): string {
  const src = join(job.samples, "scan_rotor.csv");
  const sidecar = join(job.samples, "scan_rotor_levels.csv");
  const levels = existsSync(sidecar) ? readTable(sidecar) : null;
  const svg = renderFidelityPanel(readTable(src), levels, src);
  const dest = join(job.out, "fidelity.svg");
  writeFileSync(dest, svg);
  return dest;
}

export function runCli(argv: string[]): number {
  const parsed = yargs(argv)
    .scriptName("qesspin-plots")
    .command("sphere", "render the sphere constellation figure")
    .command("fidelity", "render the fidelity panel")
    .command("all", "render every figure")
    .demandCommand(1, "pick a figure: sphere, fidelity, or all")
    .option("samples", {
      type: "string",
      default: resolve(__dirname, "..", "samples"),
      describe: "directory with the shipped qesspin CSVs",
    })
    .option("out", {
      type: "string",
      default: resolve(__dirname, "..", "out"),
      describe: "where to write the SVG files",
    })
    .strict()
    .exitProcess(false)
    .parseSync();

  const command = String(parsed._[0] ?? "");
  const job: FigureJob = { samples: String(parsed.samples), out: String(parsed.out) };
  if (!["sphere", "fidelity", "all"].includes(command)) {
    console.error(`unknown figure ${JSON.stringify(command)}`);
    return 2;
  }
  mkdirSync(job.out, { recursive: true });
  try {
    if (command === "sphere" || command === "all") {
      console.log(`wrote ${makeSphereFigure(job)}`);
    }
    if (command === "fidelity" || command === "all") {
      console.log(`wrote ${makeFidelityFigure(job)}`);
    }
  } catch (err) {
    console.error(`error: ${err instanceof Error ? err.message : String(err)}`);
    return 1;
  }
  return 0;
}

if (require.main === module) {
  process.exitCode = runCli(hideBin(process.argv));
}
