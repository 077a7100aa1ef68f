import { mkdtempSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";

import { describe, expect, it } from "vitest";

import { column, parseCsv, readTable, SchemaError } from "../src/csv.js";

const SAMPLE = `# command=rate-bm
# sweep=s_over_lambda,0.01,20,3
x,rate_R,asymptote,gaussian
0.01,0.99993,5000,0.9999
1,0.538,0.5,0.3678
20,0.0012,0.00125,0
`;

describe("parseCsv", () => {
  it("splits preamble, header, and numeric rows", () => {
    const t = parseCsv(SAMPLE);
    expect(t.config.command).toBe("rate-bm");
    expect(t.config.sweep).toBe("s_over_lambda,0.01,20,3");
    expect(t.columns).toEqual(["x", "rate_R", "asymptote", "gaussian"]);
    expect(t.rows).toHaveLength(3);
    expect(t.rows[1][1]).toBeCloseTo(0.538, 12);
  });

  it("rejects ragged or non-numeric rows", () => {
    expect(() => parseCsv("a,b\n1,2\n3\n")).toThrow(SchemaError);
    expect(() => parseCsv("a,b\n1,banana\n")).toThrow(SchemaError);
  });

  it("rejects preamble lines without key=value", () => {
    expect(() => parseCsv("# just a comment\na\n1\n")).toThrow(SchemaError);
  });
});

describe("readTable", () => {
  it("checks existence and header", () => {
    const dir = mkdtempSync(join(tmpdir(), "csv-"));
    const path = join(dir, "t.csv");
    writeFileSync(path, SAMPLE);
    const t = readTable(path, ["x", "rate_R", "asymptote", "gaussian"]);
    expect(column(t, "x")).toEqual([0.01, 1, 20]);
    expect(() => readTable(path, ["x", "wrong"])).toThrow(/header/);
    expect(() => readTable(join(dir, "nope.csv"), ["x"])).toThrow(/missing/);
  });
});
