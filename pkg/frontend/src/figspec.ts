/** Figure descriptions: which CSVs feed which plot, and on what axes. */

import { existsSync } from "node:fs";

import { readTable, SchemaError, Table } from "./csv.js";

export type FigureId = "fig2" | "fig4" | "fig5" | "mfp";
export type AxisScale = "linear" | "log";

export interface FigureSpec {
  id: FigureId;
  /** input CSV paths; fig4 takes one curve file per s/a case */
  inputs: string[];
  /** output image path (.svg) */
  output: string;
  xScale: AxisScale;
  yScale: AxisScale;
}

export const EXPECTED_COLUMNS: Record<FigureId, string[]> = {
  fig2: ["x", "rate_R", "asymptote", "gaussian"],
  fig4: ["u", "lhs", "rhs"],
  fig5: ["r", "psi_scat_abs", "envelope_abs"],
  mfp: ["L_over_lambda", "R_tilde", "R_ideal", "suppressed_ref"],
};

const INPUT_COUNT: Record<FigureId, number> = {
  fig2: 1,
  fig4: 3,
  fig5: 1,
  mfp: 1,
};

/** Check the referenced CSVs exist and carry the expected header;
 *  returns the parsed tables in input order. */
export function validateSpec(spec: FigureSpec): Table[] {
  if (spec.inputs.length !== INPUT_COUNT[spec.id]) {
    throw new SchemaError(
      `${spec.id} needs ${INPUT_COUNT[spec.id]} input CSV(s), ` +
        `got ${spec.inputs.length}`,
    );
  }
  for (const path of spec.inputs) {
    if (!existsSync(path)) throw new SchemaError(`missing CSV: ${path}`);
  }
  return spec.inputs.map((path) =>
    readTable(path, EXPECTED_COLUMNS[spec.id]),
  );
}
