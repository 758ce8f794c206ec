import { describe, expect, it } from 'vitest';

import { PALETTE, parseChartData } from '../src/data';

const VALID = JSON.stringify({
  months: ['2011-01', '2011-02'],
  projects: [
    { id: 'a/x', median_wf: [1, 2], gppr: [3, 4], active: [1, 2], pattern: null },
    { id: 'b/y', median_wf: [0, 0.5], gppr: [1, 1], active: [2, 2], pattern: 'changing-both' },
  ],
});

describe('parseChartData', () => {
  it('parses a valid document', () => {
    const data = parseChartData(VALID);
    expect(data.months).toEqual(['2011-01', '2011-02']);
    expect(data.projects).toHaveLength(2);
    expect(data.projects[0]!.pattern).toBeNull();
    expect(data.projects[1]!.pattern).toBe('changing-both');
  });

  it('assigns colors deterministically by project order', () => {
    const a = parseChartData(VALID);
    const b = parseChartData(VALID);
    expect(a.projects.map((p) => p.color)).toEqual(b.projects.map((p) => p.color));
    expect(a.projects[0]!.color).toBe(PALETTE[0]);
    expect(a.projects[1]!.color).toBe(PALETTE[1]);
  });

  it('rejects malformed JSON', () => {
    expect(() => parseChartData('{nope')).toThrow(/not valid JSON/);
  });

  it('rejects misaligned arrays', () => {
    const doc = JSON.parse(VALID);
    doc.projects[0].gppr = [1];
    expect(() => parseChartData(JSON.stringify(doc))).toThrow(/gppr/);
  });

  it('rejects non-numeric values', () => {
    const doc = JSON.parse(VALID);
    doc.projects[1].median_wf = ['many', 'few'];
    expect(() => parseChartData(JSON.stringify(doc))).toThrow(/median_wf/);
  });

  it('rejects a project without an id', () => {
    const doc = JSON.parse(VALID);
    delete doc.projects[0].id;
    expect(() => parseChartData(JSON.stringify(doc))).toThrow(/id/);
  });
});
