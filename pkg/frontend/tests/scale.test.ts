import { describe, expect, it } from 'vitest';

import { formatTick, makeScale, project, ticks } from '../src/scale';

describe('linear scale', () => {
  const scale = makeScale('linear', [0, 50, 100], 0, 210);

  it('maps the domain onto the range', () => {
    expect(project(scale, 0)).toBe(0);
    expect(project(scale, 105)).toBe(210); // domain padded to max * 1.05
    expect(project(scale, 52.5)).toBeCloseTo(105, 6);
  });

  it('clamps beyond the domain', () => {
    expect(project(scale, -10)).toBe(0);
    expect(project(scale, 1e9)).toBe(210);
  });

  it('handles an all-zero domain', () => {
    const empty = makeScale('linear', [0, 0], 0, 100);
    expect(project(empty, 0)).toBe(0);
  });

  it('produces ascending in-domain ticks', () => {
    const values = ticks(scale);
    expect(values.length).toBeGreaterThan(2);
    expect([...values].sort((a, b) => a - b)).toEqual(values);
    for (const v of values) {
      expect(v).toBeGreaterThanOrEqual(scale.lo);
      expect(v).toBeLessThanOrEqual(scale.hi + 1e-9);
    }
  });
});

describe('log scale', () => {
  const scale = makeScale('log', [0, 0.5, 10, 1000], 0, 300);

  it('anchors at the smallest positive value', () => {
    expect(scale.lo).toBe(0.5);
    expect(project(scale, 0.5)).toBe(0);
    expect(project(scale, 1000)).toBe(300);
  });

  it('clamps zero to the low end instead of diverging', () => {
    expect(project(scale, 0)).toBe(0);
  });

  it('spaces decades evenly', () => {
    const d1 = project(scale, 10) - project(scale, 1);
    const d2 = project(scale, 100) - project(scale, 10);
    expect(d1).toBeCloseTo(d2, 6);
  });

  it('ticks at powers of ten', () => {
    expect(ticks(scale)).toEqual([1, 10, 100, 1000]);
  });
});

describe('formatTick', () => {
  it('keeps small numbers plain and abbreviates thousands', () => {
    expect(formatTick(2.5)).toBe('2.5');
    expect(formatTick(40)).toBe('40');
    expect(formatTick(12000)).toBe('12k');
  });
});
