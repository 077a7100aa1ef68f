/**
 * Produces fresh input CSVs by invoking the twositebath CLI. This is
 * the only contact with the physics package; nothing downstream of the
 * CSV files recomputes anything.
 */

import { spawnSync } from "node:child_process";
import { mkdirSync } from "node:fs";
import { join } from "node:path";

export function runCli(args: string[], outPath: string): void {
  const res = spawnSync(
    "python3",
    ["-m", "twositebath", ...args, "--out", outPath],
    { encoding: "utf8" },
  );
  if (res.error) throw res.error;
  if (res.status !== 0) {
    throw new Error(
      `twositebath ${args[0]} exited ${res.status}: ${res.stderr}`,
    );
  }
}

/** CLI argument lists per dataset. fig5 parameters: a+ = 3/2, a- = 1/2
 *  (a/s = 0.5 with occupation 3,1), k0 = 10, incidence 30 deg, t = 10. */
export const DATASETS = {
  fig2: [
    ["rate-bm", "--sweep", "s_over_lambda", "0.05", "30", "240", "--log"],
  ],
  fig4: [
    ["bound", "--s-over-a", "2,3", "--curve", "0", "6", "601"],
    ["bound", "--s-over-a", "1,0.5", "--curve", "0", "6", "601"],
    ["bound", "--s-over-a=-3,-0.5", "--curve", "0", "6", "601"],
  ],
  fig5: [
    [
      "wave", "--a-over-s", "0.5", "--occ", "3,1", "--k0", "10",
      "--incidence-deg", "30", "--t", "10",
      "--r-grid", "0.5", "140", "560",
    ],
  ],
  mfp: [
    ["mfp", "--s-over-lambda", "2", "--L-sweep", "1", "1e4", "80", "--log"],
  ],
} as const;

export type DatasetId = keyof typeof DATASETS;

/** Generate every CSV for one figure into dataDir; returns the paths. */
export function generateFigureData(id: DatasetId, dataDir: string): string[] {
  mkdirSync(dataDir, { recursive: true });
  return DATASETS[id].map((args, j) => {
    const path = join(
      dataDir,
      DATASETS[id].length > 1 ? `${id}_${j}.csv` : `${id}.csv`,
    );
    runCli([...args], path);
    return path;
  });
}
