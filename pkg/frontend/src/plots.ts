#!/usr/bin/env node
/** plots --in <csv> --metric time|cost --style box|line --out <img>
 *
 * Renders a benchmark CSV (the `plan run` contract) into a figure. The output
 * format follows the --out extension: .svg or .png. Exit codes: 0 success,
 * 1 bad arguments or schema/selection errors.
 */

import * as fs from "fs";
import * as path from "path";
import yargs from "yargs";

import { readBenchCsv, SchemaError, Metric } from "./csv";
import { renderFigure, Style } from "./figure";

export function renderToFile(csvPath: string, metric: Metric, style: Style,
                             outPath: string): void {
  const rows = readBenchCsv(csvPath);
  const svg = renderFigure(rows, metric, style);
  const ext = path.extname(outPath).toLowerCase();
  if (ext === ".svg") {
    fs.writeFileSync(outPath, svg);
    return;
  }
  if (ext === ".png") {
    // resvg renders deterministically for a fixed SVG and font set
    const { Resvg } = require("@resvg/resvg-js");
    const resvg = new Resvg(svg, {
      font: { loadSystemFonts: true, defaultFontFamily: "DejaVu Sans" },
    });
    fs.writeFileSync(outPath, resvg.render().asPng());
    return;
  }
  throw new Error(`unsupported output format ${ext || "(none)"}; use .svg or .png`);
}

export function main(argv: string[]): number {
  const args = yargs(argv)
    .option("in", { type: "string", demandOption: true, describe: "benchmark CSV path" })
    .option("metric", { choices: ["time", "cost"] as const, demandOption: true })
    .option("style", { choices: ["box", "line"] as const, demandOption: true })
    .option("out", { type: "string", demandOption: true, describe: "output .svg or .png" })
    .strict()
    .exitProcess(false)
    .parseSync();

  try {
    renderToFile(args.in, args.metric as Metric, args.style as Style, args.out);
  } catch (err) {
    if (err instanceof SchemaError) {
      console.error(`plots: schema error: ${(err as Error).message}`);
    } else {
      console.error(`plots: ${(err as Error).message}`);
    }
    return 1;
  }
  console.log(`wrote ${args.out}`);
  return 0;
}

if (require.main === module) {
  process.exit(main(process.argv.slice(2)));
}
