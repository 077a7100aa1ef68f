/** Default figure specs wiring generated CSV names to output images. */

import { join } from "node:path";

import { AxisScale, FigureId, FigureSpec } from "./figspec.js";
import { DATASETS } from "./generate.js";

const SCALES: Record<FigureId, { x: AxisScale; y: AxisScale }> = {
  fig2: { x: "log", y: "log" },
  fig4: { x: "linear", y: "linear" },
  fig5: { x: "linear", y: "linear" },
  mfp: { x: "log", y: "linear" },
};

export function defaultSpec(
  id: FigureId,
  dataDir: string,
  outDir: string,
): FigureSpec {
  const n = DATASETS[id].length;
  const inputs = Array.from({ length: n }, (_, j) =>
    join(dataDir, n > 1 ? `${id}_${j}.csv` : `${id}.csv`),
  );
  return {
    id,
    inputs,
    output: join(outDir, `${id}.svg`),
    xScale: SCALES[id].x,
    yScale: SCALES[id].y,
  };
}

export const FIGURE_IDS: FigureId[] = ["fig2", "fig4", "fig5", "mfp"];
