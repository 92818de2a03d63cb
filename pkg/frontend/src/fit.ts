/** Least-squares power-law fitting on log-log axes. */

export interface FitResult {
  slope: number;
  intercept: number;
  rmsResidual: number;
  nUsed: number;
}

/**
 * Slope of log(q) against log(t) over t in [tLo, tHi].  Samples with
 * non-positive t or q, or NaN q, are excluded; at least five must remain.
 */
export function logLogSlope(
  t: number[],
  q: number[],
  tLo: number,
  tHi: number
): FitResult {
  const xs: number[] = [];
  const ys: number[] = [];
  for (let i = 0; i < t.length; i++) {
    if (t[i] >= tLo && t[i] <= tHi && t[i] > 0 && q[i] > 0 && Number.isFinite(q[i])) {
      xs.push(Math.log(t[i]));
      ys.push(Math.log(q[i]));
    }
  }
  const n = xs.length;
  if (n < 5) {
    throw new Error(`fit window [${tLo}, ${tHi}] holds only ${n} usable samples`);
  }
  const mx = xs.reduce((a, b) => a + b, 0) / n;
  const my = ys.reduce((a, b) => a + b, 0) / n;
  let sxx = 0;
  let sxy = 0;
  for (let i = 0; i < n; i++) {
    sxx += (xs[i] - mx) ** 2;
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  const slope = sxy / sxx;
  const intercept = my - slope * mx;
  let ss = 0;
  for (let i = 0; i < n; i++) {
    ss += (ys[i] - slope * xs[i] - intercept) ** 2;
  }
  return { slope, intercept, rmsResidual: Math.sqrt(ss / n), nUsed: n };
}
