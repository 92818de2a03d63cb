/**
 * Minimal hand-rolled SVG chart builder: line/scatter panels with linear or
 * log axes, tick labels, reference lines and a legend.  Output depends only
 * on the inputs (no dates, no randomness), so identical inputs reproduce
 * identical bytes.
 */

export interface SeriesSpec {
  x: number[];
  y: number[];
  color: string;
  label?: string;
  width?: number;
  dash?: string;
  markers?: boolean; // draw circles at the samples (always on for 1-point series)
}

export interface GuideLine {
  /** slope in log-log space; anchored at (x0, y0) */
  slope: number;
  x0: number;
  y0: number;
  color: string;
  label: string;
}

export interface PanelSpec {
  title: string;
  xLabel: string;
  yLabel: string;
  xScale?: "linear" | "log";
  yScale?: "linear" | "log";
  series: SeriesSpec[];
  guides?: GuideLine[];
  /** scatter points (r, z, intensity in [0,1]) for particle frames */
  cloud?: { x: number[]; y: number[]; c: number[] };
  xRange?: [number, number];
  yRange?: [number, number];
}

const PW = 460; // panel width
const PH = 300; // panel height
const ML = 64;
const MR = 16;
const MT = 34;
const MB = 44;

export function esc(s: string): string {
  return s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

function fmtTick(v: number): string {
  if (v === 0) return "0";
  const a = Math.abs(v);
  if (a >= 1e4 || a < 1e-3) return v.toExponential(0).replace("e+", "e");
  return Number(v.toPrecision(3)).toString();
}

interface Scale {
  (v: number): number;
  ticks: number[];
}

function makeScale(
  lo: number,
  hi: number,
  outLo: number,
  outHi: number,
  kind: "linear" | "log"
): Scale {
  if (kind === "log") {
    const llo = Math.log10(lo);
    const lhi = Math.log10(hi);
    const f = ((v: number) =>
      outLo + ((Math.log10(v) - llo) / (lhi - llo || 1)) * (outHi - outLo)) as Scale;
    const ticks: number[] = [];
    for (let e = Math.ceil(llo); e <= Math.floor(lhi); e++) ticks.push(10 ** e);
    if (ticks.length < 2) {
      ticks.length = 0;
      for (let i = 0; i <= 4; i++) ticks.push(10 ** (llo + ((lhi - llo) * i) / 4));
    }
    f.ticks = ticks;
    return f;
  }
  const span = hi - lo || 1;
  const f = ((v: number) => outLo + ((v - lo) / span) * (outHi - outLo)) as Scale;
  const step = niceStep(span / 5);
  const start = Math.ceil(lo / step) * step;
  const ticks: number[] = [];
  for (let v = start; v <= hi + 1e-12 * span; v += step) ticks.push(v);
  f.ticks = ticks;
  return f;
}

function niceStep(raw: number): number {
  const mag = 10 ** Math.floor(Math.log10(raw));
  const frac = raw / mag;
  if (frac <= 1) return mag;
  if (frac <= 2) return 2 * mag;
  if (frac <= 5) return 5 * mag;
  return 10 * mag;
}

function extent(values: number[], positiveOnly: boolean): [number, number] {
  let lo = Infinity;
  let hi = -Infinity;
  for (const v of values) {
    if (!Number.isFinite(v)) continue;
    if (positiveOnly && v <= 0) continue;
    if (v < lo) lo = v;
    if (v > hi) hi = v;
  }
  if (!Number.isFinite(lo)) return positiveOnly ? [0.1, 1] : [0, 1];
  if (lo === hi) {
    return positiveOnly ? [lo / 2, hi * 2] : [lo - 1, hi + 1];
  }
  if (!positiveOnly) {
    const pad = 0.05 * (hi - lo);
    return [lo - pad, hi + pad];
  }
  return [lo / 1.3, hi * 1.3];
}

export function renderPanel(p: PanelSpec): string {
  const xKind = p.xScale ?? "linear";
  const yKind = p.yScale ?? "linear";
  const xs = p.series.flatMap((s) => s.x).concat(p.cloud ? p.cloud.x : []);
  const ys = p.series.flatMap((s) => s.y).concat(p.cloud ? p.cloud.y : []);
  const [xLo, xHi] = p.xRange ?? extent(xs, xKind === "log");
  const [yLo, yHi] = p.yRange ?? extent(ys, yKind === "log");
  const sx = makeScale(xLo, xHi, ML, PW - MR, xKind);
  const sy = makeScale(yLo, yHi, PH - MB, MT, yKind);

  let out = "";
  out += `<rect x="${ML}" y="${MT}" width="${PW - ML - MR}" height="${PH - MT - MB}" fill="#fbfbfb" stroke="#888"/>\n`;
  out += `<text x="${(ML + PW - MR) / 2}" y="${MT - 12}" text-anchor="middle" font-size="13" font-weight="bold">${esc(p.title)}</text>\n`;

  for (const v of sx.ticks) {
    if (v < xLo || v > xHi) continue;
    const x = sx(v);
    out += `<line x1="${x.toFixed(2)}" y1="${PH - MB}" x2="${x.toFixed(2)}" y2="${PH - MB + 4}" stroke="#444"/>\n`;
    out += `<text x="${x.toFixed(2)}" y="${PH - MB + 16}" text-anchor="middle" font-size="10">${fmtTick(v)}</text>\n`;
  }
  for (const v of sy.ticks) {
    if (v < yLo || v > yHi) continue;
    const y = sy(v);
    out += `<line x1="${ML - 4}" y1="${y.toFixed(2)}" x2="${ML}" y2="${y.toFixed(2)}" stroke="#444"/>\n`;
    out += `<text x="${ML - 7}" y="${(y + 3).toFixed(2)}" text-anchor="end" font-size="10">${fmtTick(v)}</text>\n`;
  }
  out += `<text x="${(ML + PW - MR) / 2}" y="${PH - 8}" text-anchor="middle" font-size="11">${esc(p.xLabel)}</text>\n`;
  out += `<text x="16" y="${(MT + PH - MB) / 2}" text-anchor="middle" font-size="11" transform="rotate(-90 16 ${(MT + PH - MB) / 2})">${esc(p.yLabel)}</text>\n`;

  if (p.cloud) {
    const { x, y, c } = p.cloud;
    for (let i = 0; i < x.length; i++) {
      if (x[i] < xLo || x[i] > xHi || y[i] < yLo || y[i] > yHi) continue;
      const shade = Math.round(235 - 205 * Math.min(1, Math.max(0, c[i])));
      out += `<circle cx="${sx(x[i]).toFixed(1)}" cy="${sy(y[i]).toFixed(1)}" r="1.3" fill="rgb(${shade},${Math.round(shade * 0.45)},60)"/>\n`;
    }
  }

  for (const g of p.guides ?? []) {
    // straight line of given slope through (x0, y0) in log-log space
    const x1 = xLo * 1.05;
    const x2 = xHi / 1.05;
    const y1 = g.y0 * (x1 / g.x0) ** g.slope;
    const y2 = g.y0 * (x2 / g.x0) ** g.slope;
    out += `<line x1="${sx(x1).toFixed(2)}" y1="${sy(y1).toFixed(2)}" x2="${sx(x2).toFixed(2)}" y2="${sy(y2).toFixed(2)}" stroke="${g.color}" stroke-dasharray="5,4" stroke-width="1"/>\n`;
    out += `<text x="${(sx(x2) - 2).toFixed(2)}" y="${(sy(y2) - 4).toFixed(2)}" text-anchor="end" font-size="10" fill="${g.color}">${esc(g.label)}</text>\n`;
  }

  let legendY = MT + 14;
  for (const s of p.series) {
    const pts: string[] = [];
    for (let i = 0; i < s.x.length; i++) {
      const vx = s.x[i];
      const vy = s.y[i];
      if (!Number.isFinite(vx) || !Number.isFinite(vy)) continue;
      if (xKind === "log" && vx <= 0) continue;
      if (yKind === "log" && vy <= 0) continue;
      pts.push(`${sx(vx).toFixed(2)},${sy(vy).toFixed(2)}`);
    }
    if (pts.length > 1) {
      out += `<polyline fill="none" stroke="${s.color}" stroke-width="${s.width ?? 1.4}"${s.dash ? ` stroke-dasharray="${s.dash}"` : ""} points="${pts.join(" ")}"/>\n`;
    }
    if (s.markers || pts.length === 1) {
      for (const pt of pts) {
        const [cx, cy] = pt.split(",");
        out += `<circle cx="${cx}" cy="${cy}" r="2.4" fill="${s.color}"/>\n`;
      }
    }
    if (s.label) {
      out += `<line x1="${ML + 8}" y1="${legendY}" x2="${ML + 28}" y2="${legendY}" stroke="${s.color}" stroke-width="2"${s.dash ? ` stroke-dasharray="${s.dash}"` : ""}/>\n`;
      out += `<text x="${ML + 33}" y="${legendY + 3}" font-size="10">${esc(s.label)}</text>\n`;
      legendY += 13;
    }
  }
  return out;
}

/** Lay panels out on a grid and wrap them in a complete SVG document. */
export function svgDocument(panels: string[], columns = 2): string {
  const rows = Math.ceil(panels.length / columns);
  const W = PW * Math.min(columns, panels.length);
  const H = PH * rows;
  let out = `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${W} ${H}" font-family="Helvetica, Arial, sans-serif">\n`;
  out += `<rect width="${W}" height="${H}" fill="white"/>\n`;
  panels.forEach((panel, i) => {
    const gx = (i % columns) * PW;
    const gy = Math.floor(i / columns) * PH;
    out += `<g transform="translate(${gx},${gy})">\n${panel}</g>\n`;
  });
  out += "</svg>\n";
  return out;
}
