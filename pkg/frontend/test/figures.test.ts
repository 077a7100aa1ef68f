/**
 * Integration: generate fresh CSV through the CLI, check the ordering
 * relations the figures rely on, and render. No pixel assertions;
 * images are regenerated artifacts.
 */

import { mkdtempSync, readFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";

import { beforeAll, describe, expect, it } from "vitest";

import { column, readTable, Table } from "../src/csv.js";
import { EXPECTED_COLUMNS, validateSpec } from "../src/figspec.js";
import { defaultSpec, FIGURE_IDS } from "../src/figures.js";
import { generateFigureData } from "../src/generate.js";
import { renderSvg, render } from "../src/render.js";

let dataDir: string;
let outDir: string;

beforeAll(() => {
  dataDir = mkdtempSync(join(tmpdir(), "figdata-"));
  outDir = mkdtempSync(join(tmpdir(), "figout-"));
  for (const id of FIGURE_IDS) generateFigureData(id, dataDir);
}, 300_000);

function table(name: string, id: keyof typeof EXPECTED_COLUMNS): Table {
  return readTable(join(dataDir, name), EXPECTED_COLUMNS[id]);
}

describe("fig2 curve ordering", () => {
  it("keeps R between the Gaussian and 1, and above the tail", () => {
    const t = table("fig2.csv", "fig2");
    const x = column(t, "x");
    const r = column(t, "rate_R");
    const tail = column(t, "asymptote");
    const gauss = column(t, "gaussian");
    for (let i = 0; i < x.length; i++) {
      expect(r[i]).toBeGreaterThan(0);
      expect(r[i]).toBeLessThanOrEqual(1);
      expect(r[i]).toBeGreaterThanOrEqual(gauss[i]);
      if (x[i] >= 2) expect(r[i]).toBeGreaterThanOrEqual(0.95 * tail[i]);
    }
    // slower decay than Gaussian but clearly below 1 on x in [1, 4]
    const mid = x.filter((v) => v >= 1 && v <= 4);
    expect(mid.length).toBeGreaterThan(20);
    for (let i = 0; i < x.length; i++) {
      if (x[i] >= 1 && x[i] <= 4) {
        expect(r[i]).toBeLessThan(0.6);
        expect(r[i]).toBeGreaterThan(gauss[i]);
      }
    }
  });
});

describe("fig4 crossing structure", () => {
  function crossings(t: Table): number {
    const u = column(t, "u");
    const lhs = column(t, "lhs");
    const rhs = column(t, "rhs");
    let n = 0;
    for (let i = 1; i < u.length; i++) {
      if (u[i - 1] <= 0) continue;
      const d0 = lhs[i - 1] - rhs[i - 1];
      const d1 = lhs[i] - rhs[i];
      if (d0 === 0 || d0 * d1 < 0) n++;
    }
    return n;
  }

  it("counts 2 / 1 / 0 positive crossings for the three cases", () => {
    expect(crossings(table("fig4_0.csv", "fig4"))).toBe(2); // s/a = (2, 3)
    expect(crossings(table("fig4_1.csv", "fig4"))).toBe(1); // (1, 1/2)
    expect(crossings(table("fig4_2.csv", "fig4"))).toBe(0); // (-3, -1/2)
  });
});

describe("fig5 envelope", () => {
  it("bounds the numeric wave by the step envelope", () => {
    const t = table("fig5.csv", "fig5");
    const r = column(t, "r");
    const psi = column(t, "psi_scat_abs");
    const env = column(t, "envelope_abs");
    // interior: local oscillations average out to the envelope
    let sum = 0;
    let n = 0;
    for (let i = 0; i < r.length; i++) {
      if (r[i] >= 20 && r[i] <= 90) {
        sum += psi[i] / env[i];
        n++;
      }
    }
    expect(n).toBeGreaterThan(100);
    expect(sum / n).toBeGreaterThan(0.9);
    expect(sum / n).toBeLessThan(1.1);
    // beyond the front (k0 t = 100 plus the source half-width) the step
    // envelope is zero and the numeric wave has died off
    const inside = psi.filter((_, i) => r[i] > 40 && r[i] < 60);
    const peak = Math.max(...inside);
    for (let i = 0; i < r.length; i++) {
      if (r[i] >= 106) {
        expect(env[i]).toBe(0);
        expect(psi[i]).toBeLessThan(0.1 * peak);
      }
    }
  });
});

describe("mfp saturation", () => {
  it("rises toward the ideal-gas value without crossing it", () => {
    const t = table("mfp.csv", "mfp");
    const L = column(t, "L_over_lambda");
    const rt = column(t, "R_tilde");
    const ideal = column(t, "R_ideal");
    for (let i = 0; i < L.length; i++) {
      expect(rt[i]).toBeLessThanOrEqual(ideal[i] * (1 + 1e-3));
      if (i > 0) expect(rt[i]).toBeGreaterThan(rt[i - 1] - 1e-3 * ideal[i]);
    }
    const last = rt.length - 1;
    expect(L[last]).toBeCloseTo(1e4, 6);
    expect(Math.abs(rt[last] - ideal[last]) / ideal[last]).toBeLessThan(0.01);
  });
});

describe("render", () => {
  it("writes deterministic SVG for every figure", () => {
    for (const id of FIGURE_IDS) {
      const spec = defaultSpec(id, dataDir, outDir);
      render(spec);
      const svg = readFileSync(spec.output, "ascii");
      expect(svg.startsWith("<svg ")).toBe(true);
      expect(svg).toContain("<path");
      expect(renderSvg(spec)).toBe(svg);
    }
  });

  it("raises a schema error on missing or mismatched CSV", () => {
    const spec = defaultSpec("fig2", dataDir, outDir);
    expect(() =>
      validateSpec({ ...spec, inputs: [join(dataDir, "absent.csv")] }),
    ).toThrow(/missing/);
    expect(() =>
      validateSpec({ ...spec, inputs: [join(dataDir, "mfp.csv")] }),
    ).toThrow(/header/);
    expect(() => validateSpec({ ...spec, inputs: [] })).toThrow(/input/);
  });
});
