/** Regenerate all figures: fresh CSV via the CLI, then render. */

import { mkdirSync } from "node:fs";

import { defaultSpec, FIGURE_IDS } from "./figures.js";
import { generateFigureData } from "./generate.js";
import { render } from "./render.js";

const dataDir = process.argv[2] ?? "data";
const outDir = process.argv[3] ?? "out";

mkdirSync(outDir, { recursive: true });
for (const id of FIGURE_IDS) {
  generateFigureData(id, dataDir);
  const spec = defaultSpec(id, dataDir, outDir);
  render(spec);
  console.log(`${id}: ${spec.inputs.join(", ")} -> ${spec.output}`);
}
