/** SVG renderer. Everything plotted comes from the input tables. */

import { writeFileSync } from "node:fs";

import { scaleLinear, scaleLog } from "d3-scale";
import { line } from "d3-shape";

import { column, Table } from "./csv.js";
import { FigureSpec, validateSpec } from "./figspec.js";

const W = 640;
const H = 440;
const MARGIN = { l: 66, r: 16, t: 18, b: 50 };

// matplotlib tab10, the usual suspects
const C0 = "#1f77b4";
const C1 = "#d62728";
const C2 = "#2ca02c";

interface Curve {
  x: number[];
  y: number[];
  stroke: string;
  width: number;
  dash?: string;
  label: string;
}

interface Plot {
  curves: Curve[];
  xDomain: [number, number];
  yDomain: [number, number];
  xLabel: string;
  yLabel: string;
}

function buildPlot(id: FigureSpec["id"], tables: Table[]): Plot {
  if (id === "fig2") {
    const t = tables[0];
    const x = column(t, "x");
    return {
      curves: [
        { x, y: column(t, "rate_R"), stroke: "#000000", width: 1.8,
          label: "R(x)" },
        { x, y: column(t, "asymptote"), stroke: C1, width: 1.4,
          dash: "6 3", label: "1/(2x^2)" },
        { x, y: column(t, "gaussian"), stroke: C0, width: 1.4,
          dash: "2 3", label: "exp(-x^2)" },
      ],
      xDomain: [x[0], x[x.length - 1]],
      yDomain: [1e-6, 1.5],
      xLabel: "x = s/lambda",
      yLabel: "rate factor",
    };
  }
  if (id === "fig4") {
    const labels = ["s/a = (2, 3)", "s/a = (1, 1/2)", "s/a = (-3, -1/2)"];
    const colors = [C0, C2, C1];
    const curves: Curve[] = tables.map((t, j) => ({
      x: column(t, "u"),
      y: column(t, "lhs"),
      stroke: colors[j],
      width: 1.6,
      label: labels[j],
    }));
    // the right-hand side e^{-2u} is the same curve in every table
    curves.push({
      x: column(tables[0], "u"),
      y: column(tables[0], "rhs"),
      stroke: "#000000",
      width: 1.8,
      dash: "6 3",
      label: "exp(-2u)",
    });
    return {
      curves,
      xDomain: [0, 6],
      yDomain: [-0.5, 4],
      xLabel: "u = q s",
      yLabel: "(u - s/a+)(u - s/a-)",
    };
  }
  if (id === "fig5") {
    const t = tables[0];
    const r = column(t, "r");
    const env = column(t, "envelope_abs");
    const psi = column(t, "psi_scat_abs");
    const top = 1.15 * Math.max(...env, ...psi);
    return {
      curves: [
        { x: r, y: psi, stroke: C0, width: 1.0, label: "numeric" },
        { x: r, y: env, stroke: "#444444", width: 2.2,
          label: "step envelope" },
      ],
      xDomain: [0, r[r.length - 1]],
      yDomain: [0, top],
      xLabel: "r / s",
      yLabel: "|psi_scat|",
    };
  }
  // mfp saturation
  const t = tables[0];
  const L = column(t, "L_over_lambda");
  const ideal = column(t, "R_ideal");
  return {
    curves: [
      { x: L, y: column(t, "R_tilde"), stroke: "#000000", width: 1.8,
        label: "finite mean free path" },
      { x: L, y: ideal, stroke: C1, width: 1.4, dash: "6 3",
        label: "ideal gas" },
      { x: L, y: column(t, "suppressed_ref"), stroke: C0, width: 1.4,
        dash: "2 3", label: "opaque limit" },
    ],
    xDomain: [L[0], L[L.length - 1]],
    yDomain: [0, 1.15 * Math.max(...ideal)],
    xLabel: "L / lambda",
    yLabel: "rate factor at s/lambda = 2",
  };
}

function makeScale(scale: "linear" | "log", domain: [number, number],
                   range: [number, number]) {
  const sc = scale === "log" ? scaleLog() : scaleLinear();
  return sc.domain(domain).range(range);
}

function px(v: number): number {
  return Math.round(v * 100) / 100;
}

function tickLabel(v: number, scale: "linear" | "log"): string {
  if (scale === "log") {
    const e = Math.round(Math.log10(v));
    return Math.abs(Math.log10(v) - e) < 1e-9 ? `1e${e}` : "";
  }
  return String(+v.toPrecision(6));
}

export function renderSvg(spec: FigureSpec): string {
  const tables = validateSpec(spec);
  const plot = buildPlot(spec.id, tables);
  const sx = makeScale(spec.xScale, plot.xDomain, [MARGIN.l, W - MARGIN.r]);
  const sy = makeScale(spec.yScale, plot.yDomain, [H - MARGIN.b, MARGIN.t]);

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${W}" height="${H}" ` +
      `viewBox="0 0 ${W} ${H}" font-family="Helvetica, sans-serif">`,
    `<rect width="${W}" height="${H}" fill="#ffffff"/>`,
    `<clipPath id="plot"><rect x="${MARGIN.l}" y="${MARGIN.t}" ` +
      `width="${W - MARGIN.l - MARGIN.r}" ` +
      `height="${H - MARGIN.t - MARGIN.b}"/></clipPath>`,
  );

  // axes
  const x0 = MARGIN.l;
  const x1 = W - MARGIN.r;
  const y0 = H - MARGIN.b;
  const y1 = MARGIN.t;
  parts.push(
    `<path d="M${x0},${y1} L${x0},${y0} L${x1},${y0}" fill="none" ` +
      `stroke="#000000" stroke-width="1"/>`,
  );
  const xTicks = (sx.ticks() as number[]).filter(
    (v) => spec.xScale !== "log" || tickLabel(v, "log") !== "",
  );
  for (const v of xTicks) {
    const p = px(sx(v));
    parts.push(
      `<line x1="${p}" y1="${y0}" x2="${p}" y2="${y0 + 5}" ` +
        `stroke="#000000"/>`,
      `<text x="${p}" y="${y0 + 18}" font-size="11" ` +
        `text-anchor="middle">${tickLabel(v, spec.xScale)}</text>`,
    );
  }
  const yTicks = (sy.ticks(spec.yScale === "log" ? undefined : 6) as number[])
    .filter((v) => spec.yScale !== "log" || tickLabel(v, "log") !== "");
  for (const v of yTicks) {
    const p = px(sy(v));
    parts.push(
      `<line x1="${x0 - 5}" y1="${p}" x2="${x0}" y2="${p}" ` +
        `stroke="#000000"/>`,
      `<text x="${x0 - 8}" y="${p + 4}" font-size="11" ` +
        `text-anchor="end">${tickLabel(v, spec.yScale)}</text>`,
    );
  }
  parts.push(
    `<text x="${(x0 + x1) / 2}" y="${H - 12}" font-size="13" ` +
      `text-anchor="middle">${plot.xLabel}</text>`,
    `<text x="16" y="${(y0 + y1) / 2}" font-size="13" ` +
      `text-anchor="middle" transform="rotate(-90 16 ` +
      `${(y0 + y1) / 2})">${plot.yLabel}</text>`,
  );

  // curves, clipped to the plot area
  const gen = line<[number, number]>()
    .x((d) => px(sx(d[0])))
    .y((d) => px(sy(d[1])))
    .defined(
      (d) =>
        Number.isFinite(d[0]) && Number.isFinite(d[1]) &&
        (spec.xScale !== "log" || d[0] > 0) &&
        (spec.yScale !== "log" || d[1] > 0),
    );
  parts.push(`<g clip-path="url(#plot)" fill="none">`);
  for (const c of plot.curves) {
    const pts = c.x.map((v, i) => [v, c.y[i]] as [number, number]);
    const d = gen(pts) ?? "";
    const dash = c.dash ? ` stroke-dasharray="${c.dash}"` : "";
    parts.push(
      `<path d="${d}" stroke="${c.stroke}" ` +
        `stroke-width="${c.width}"${dash}/>`,
    );
  }
  parts.push(`</g>`);

  // legend, top right
  plot.curves.forEach((c, i) => {
    const ly = y1 + 14 + 16 * i;
    const dash = c.dash ? ` stroke-dasharray="${c.dash}"` : "";
    parts.push(
      `<line x1="${x1 - 150}" y1="${ly}" x2="${x1 - 118}" y2="${ly}" ` +
        `stroke="${c.stroke}" stroke-width="${c.width}"${dash}/>`,
      `<text x="${x1 - 112}" y="${ly + 4}" ` +
        `font-size="11">${c.label}</text>`,
    );
  });

  parts.push(`</svg>`);
  return parts.join("\n") + "\n";
}

export function render(spec: FigureSpec): void {
  writeFileSync(spec.output, renderSvg(spec), "ascii");
}
