/** Strict reader for the benchmark CSV contract (docs/scenario-format.md).
 * Rejects any header drift by naming the missing/unexpected column. */

import * as fs from "fs";

export const CSV_COLUMNS = [
  "scenario", "planner", "seed", "task", "phase",
  "first_solution_time_s", "final_cost", "iterations", "collision_checks",
  "success",
] as const;

export interface BenchRow {
  scenario: string;
  planner: string;
  seed: number;
  task: number;
  phase: "pick" | "place";
  first_solution_time_s: number | null;
  final_cost: number | null;
  iterations: number;
  collision_checks: number;
  success: boolean;
}

export class SchemaError extends Error {}

export function parseBenchCsv(text: string): BenchRow[] {
  const lines = text.split(/\r?\n/).filter((l) => l.length > 0);
  if (lines.length === 0) throw new SchemaError("empty CSV");
  const header = lines[0].split(",");
  for (const col of CSV_COLUMNS) {
    if (!header.includes(col)) throw new SchemaError(`missing column ${col}`);
  }
  for (const col of header) {
    if (!(CSV_COLUMNS as readonly string[]).includes(col)) {
      throw new SchemaError(`unexpected column ${col}`);
    }
  }
  const idx = Object.fromEntries(header.map((c, i) => [c, i]));
  const rows: BenchRow[] = [];
  for (const line of lines.slice(1)) {
    const cells = line.split(",");
    if (cells.length !== header.length) {
      throw new SchemaError(`row has ${cells.length} cells, expected ${header.length}`);
    }
    const num = (name: string): number | null => {
      const raw = cells[idx[name]];
      if (raw === "") return null;
      const v = Number(raw);
      if (Number.isNaN(v)) throw new SchemaError(`bad number in column ${name}: ${raw}`);
      return v;
    };
    const phase = cells[idx.phase];
    if (phase !== "pick" && phase !== "place") {
      throw new SchemaError(`bad phase value: ${phase}`);
    }
    rows.push({
      scenario: cells[idx.scenario],
      planner: cells[idx.planner],
      seed: num("seed") as number,
      task: num("task") as number,
      phase,
      first_solution_time_s: num("first_solution_time_s"),
      final_cost: num("final_cost"),
      iterations: num("iterations") as number,
      collision_checks: num("collision_checks") as number,
      success: cells[idx.success] === "true",
    });
  }
  return rows;
}

export function readBenchCsv(path: string): BenchRow[] {
  return parseBenchCsv(fs.readFileSync(path, "utf-8"));
}

export type Metric = "time" | "cost";

/** Successful rows' metric values, or null when the row has none. */
export function metricValue(row: BenchRow, metric: Metric): number | null {
  if (!row.success) return null;
  return metric === "time" ? row.first_solution_time_s : row.final_cost;
}
