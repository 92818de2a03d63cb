/**
 * The four figure types built from a series table and snapshot set:
 *
 *   moments  - P_k and Z time series (linear axes)
 *   fits     - log-log moment growth with reference slopes 4/3, 2 and 1,
 *              plus the fitted slopes of P2, sup-omega and the running
 *              fourth-power mass integrals
 *   frames   - particle scatter frames from the snapshots (ring pair
 *              translating toward z = 0 while expanding in r)
 *   escape   - m_R(t) for each configured radius and the running integral
 *              of m_R^4
 */

import { SeriesTable, column, columnsWithPrefix } from "./csv.js";
import { FitResult, logLogSlope } from "./fit.js";
import { Snapshot } from "./snapshots.js";
import { PanelSpec, renderPanel, svgDocument } from "./svg.js";

const COLORS = ["#2a4d9b", "#b23a2f", "#2e7d32", "#7b1fa2", "#c77700", "#00696b"];

export interface FigureResult {
  svg: string;
  notes: string[];
}

export function makeMoments(table: SeriesTable): FigureResult {
  const t = column(table, "t");
  const momentCols = table.columns.filter((c) => /^p\d/.test(c));
  const onePoint = table.nRows === 1;
  const left: PanelSpec = {
    title: "radial moments",
    xLabel: "t",
    yLabel: "P_k",
    series: momentCols.map((c, i) => ({
      x: t,
      y: column(table, c),
      color: COLORS[i % COLORS.length],
      label: c,
      markers: onePoint,
    })),
  };
  const right: PanelSpec = {
    title: "vertical moment",
    xLabel: "t",
    yLabel: "Z",
    series: [
      { x: t, y: column(table, "bigZ"), color: COLORS[1], label: "Z", markers: onePoint },
    ],
  };
  return {
    svg: svgDocument([renderPanel(left), renderPanel(right)]),
    notes: [`moments: ${table.nRows} record(s), columns ${momentCols.join(", ")}`],
  };
}

function windowOf(t: number[]): [number, number] {
  const pos = t.filter((v) => v > 0);
  return [pos[0], pos[pos.length - 1]];
}

export function makeFits(table: SeriesTable): FigureResult | null {
  const t = column(table, "t");
  if (t.filter((v) => v > 0).length < 5) {
    return null; // nothing to fit; the moments figure already shows the data
  }
  const [tLo, tHi] = windowOf(t);
  const notes: string[] = [];
  const fits = new Map<string, FitResult>();
  const wanted = ["p2", "omega_sup", ...columnsWithPrefix(table, "int_mR4_")];
  for (const name of wanted) {
    if (!table.data.has(name)) continue;
    try {
      const fit = logLogSlope(t, column(table, name), tLo, tHi);
      fits.set(name, fit);
      notes.push(
        `fit ${name}: slope ${fit.slope.toFixed(4)} over t in [${tLo.toPrecision(3)}, ` +
          `${tHi.toPrecision(3)}] (rms residual ${fit.rmsResidual.toExponential(1)}, n=${fit.nUsed})`
      );
    } catch (err) {
      notes.push(`fit ${name}: skipped (${(err as Error).message})`);
    }
  }
  const p2 = column(table, "p2");
  const mid = Math.floor(t.length / 2);
  const anchor = { x0: t[mid] > 0 ? t[mid] : 1, y0: p2[mid] };
  const panel: PanelSpec = {
    title: "moment growth, log-log",
    xLabel: "t",
    yLabel: "P2",
    xScale: "log",
    yScale: "log",
    series: [{ x: t, y: p2, color: COLORS[0], label: "p2" }],
    guides: [
      { slope: 4 / 3, x0: anchor.x0, y0: anchor.y0, color: "#b23a2f", label: "slope 4/3" },
      { slope: 2, x0: anchor.x0, y0: anchor.y0 * 1.15, color: "#2e7d32", label: "slope 2" },
      { slope: 1, x0: anchor.x0, y0: anchor.y0 / 1.15, color: "#7b1fa2", label: "slope 1" },
    ],
  };
  const supPanel: PanelSpec = {
    title: "sup of vorticity, log-log",
    xLabel: "t",
    yLabel: "sup omega",
    xScale: "log",
    yScale: "log",
    series: [
      { x: t, y: column(table, "omega_sup"), color: COLORS[2], label: "omega_sup" },
    ],
  };
  return { svg: svgDocument([renderPanel(panel), renderPanel(supPanel)]), notes };
}

export function makeFrames(snapshots: Snapshot[], maxPoints = 1600): FigureResult {
  const sorted = [...snapshots].sort((a, b) => a.time - b.time);
  // shared axes across frames so the motion reads directly
  let rHi = 0;
  let zHi = 0;
  let omegaHi = 0;
  for (const s of sorted) {
    for (let i = 0; i < s.count; i++) {
      rHi = Math.max(rHi, s.r[i]);
      zHi = Math.max(zHi, s.z[i]);
      omegaHi = Math.max(omegaHi, s.zeta[i] * s.r[i]);
    }
  }
  const panels = sorted.map((s) => {
    const stride = Math.max(1, Math.ceil(s.count / maxPoints));
    const cloud = { x: [] as number[], y: [] as number[], c: [] as number[] };
    for (let i = 0; i < s.count; i += stride) {
      cloud.x.push(s.r[i]);
      cloud.y.push(s.z[i]);
      cloud.c.push(omegaHi > 0 ? (s.zeta[i] * s.r[i]) / omegaHi : 0);
    }
    const spec: PanelSpec = {
      title: `t = ${s.time.toPrecision(4)}  (N = ${s.count})`,
      xLabel: "r",
      yLabel: "z",
      series: [],
      cloud,
      xRange: [0, rHi * 1.1],
      yRange: [0, zHi * 1.1],
    };
    return renderPanel(spec);
  });
  return {
    svg: svgDocument(panels, Math.min(3, Math.max(1, panels.length))),
    notes: [`frames: ${sorted.length} snapshot(s), shading by local vorticity`],
  };
}

export function makeEscape(table: SeriesTable): FigureResult {
  const t = column(table, "t");
  const massCols = columnsWithPrefix(table, "mR_");
  const intCols = columnsWithPrefix(table, "int_mR4_");
  const left: PanelSpec = {
    title: "vorticity mass inside r <= R",
    xLabel: "t",
    yLabel: "m_R",
    series: massCols.map((c, i) => ({
      x: t,
      y: column(table, c),
      color: COLORS[i % COLORS.length],
      label: c,
      markers: table.nRows === 1,
    })),
  };
  const right: PanelSpec = {
    title: "running integral of m_R^4",
    xLabel: "t",
    yLabel: "int m_R^4 dt",
    series: intCols.map((c, i) => ({
      x: t,
      y: column(table, c),
      color: COLORS[(i + 1) % COLORS.length],
      label: c,
      markers: table.nRows === 1,
    })),
  };
  const notes = [`escape: radii ${massCols.map((c) => c.slice(3)).join(", ")}`];
  // time-minimum of the descent-rate ratio (-dZ/dt) R^4 / m_R^4, one of the
  // monitored-but-unthresholded quantities
  for (const c of columnsWithPrefix(table, "zprime_ratio_")) {
    const vals = column(table, c).filter((v) => Number.isFinite(v));
    if (vals.length) {
      notes.push(`min ${c} over records: ${Math.min(...vals).toExponential(4)}`);
    }
  }
  return { svg: svgDocument([renderPanel(left), renderPanel(right)]), notes };
}
