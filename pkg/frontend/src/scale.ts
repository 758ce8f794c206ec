// Linear and log10 value-to-pixel mapping with tick generation.
//
// The wealth axis can toggle to log scale; zero and sub-minimum values
// clamp to the low end of the range so log frames stay total functions
// of the data.

export type ScaleKind = 'linear' | 'log';

export interface Scale {
  kind: ScaleKind;
  lo: number;
  hi: number;
  rangeLo: number;
  rangeHi: number;
}

export function makeScale(kind: ScaleKind, values: number[],
                          rangeLo: number, rangeHi: number): Scale {
  const max = values.length ? Math.max(...values) : 0;
  if (kind === 'log') {
    const positives = values.filter((v) => v > 0);
    const min = positives.length ? Math.min(...positives) : 0.1;
    return { kind, lo: min, hi: Math.max(max, min * 10), rangeLo, rangeHi };
  }
  return { kind, lo: 0, hi: max > 0 ? max * 1.05 : 1, rangeLo, rangeHi };
}

export function project(scale: Scale, value: number): number {
  const { kind, lo, hi, rangeLo, rangeHi } = scale;
  let t: number;
  if (kind === 'log') {
    const clamped = Math.max(value, lo);
    t = (Math.log10(clamped) - Math.log10(lo)) / (Math.log10(hi) - Math.log10(lo));
  } else {
    t = hi === lo ? 0 : (value - lo) / (hi - lo);
  }
  return rangeLo + Math.min(Math.max(t, 0), 1) * (rangeHi - rangeLo);
}

export function ticks(scale: Scale, count = 6): number[] {
  if (scale.kind === 'log') {
    const out: number[] = [];
    const first = Math.ceil(Math.log10(scale.lo));
    const last = Math.floor(Math.log10(scale.hi));
    for (let p = first; p <= last; p += 1) out.push(10 ** p);
    if (!out.length) out.push(scale.lo, scale.hi);
    return out;
  }
  const span = scale.hi - scale.lo;
  if (span <= 0) return [scale.lo];
  const rawStep = span / count;
  const power = 10 ** Math.floor(Math.log10(rawStep));
  const step = [1, 2, 5, 10].map((m) => m * power)
    .find((s) => span / s <= count) ?? power * 10;
  const out: number[] = [];
  for (let v = Math.ceil(scale.lo / step) * step; v <= scale.hi + 1e-9; v += step) {
    out.push(Number(v.toPrecision(12)));
  }
  return out;
}

export function formatTick(value: number): string {
  if (value >= 1000) return `${Number((value / 1000).toPrecision(3))}k`;
  return `${Number(value.toPrecision(3))}`;
}
