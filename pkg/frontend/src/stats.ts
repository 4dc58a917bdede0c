/** Summary statistics matching the benchmark CLI's definitions exactly:
 * sample standard deviation (n-1, 0 for a single value) and
 * linear-interpolation quantiles (numpy's default scheme). */

export function mean(values: number[]): number {
  let s = 0;
  for (const v of values) s += v;
  return s / values.length;
}

export function sampleStd(values: number[]): number {
  if (values.length < 2) return 0;
  const m = mean(values);
  let s = 0;
  for (const v of values) s += (v - m) * (v - m);
  return Math.sqrt(s / (values.length - 1));
}

export function quantile(values: number[], q: number): number {
  const xs = values.slice().sort((a, b) => a - b);
  if (xs.length === 1) return xs[0];
  const pos = q * (xs.length - 1);
  const lo = Math.floor(pos);
  const hi = Math.ceil(pos);
  if (lo === hi) return xs[lo];
  return xs[lo] + (pos - lo) * (xs[hi] - xs[lo]);
}

export interface BoxStats {
  n: number;
  min: number;
  q25: number;
  median: number;
  q75: number;
  max: number;
}

export function boxStats(values: number[]): BoxStats {
  return {
    n: values.length,
    min: Math.min(...values),
    q25: quantile(values, 0.25),
    median: quantile(values, 0.5),
    q75: quantile(values, 0.75),
    max: Math.max(...values),
  };
}
