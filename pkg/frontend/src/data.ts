// Inline data block parsing and validation for the vitals chart.
//
// The report embeds the series document as JSON in
// <script type="application/json" id="vitals-data">. Every per-project
// array must align with the months axis; failures throw with a message
// suitable for showing in the chart container.

export interface ProjectSeries {
  id: string;
  median_wf: number[];
  gppr: number[];
  active: number[];
  pattern: string | null;
  color: string;
}

export interface ChartData {
  months: string[];
  projects: ProjectSeries[];
}

// deterministic per project order; cycles past ten projects
export const PALETTE: readonly string[] = [
  '#2563eb', '#dc2626', '#059669', '#d97706', '#7c3aed',
  '#0d9488', '#db2777', '#65a30d', '#475569', '#b45309',
];

function numberArray(value: unknown, what: string, length: number): number[] {
  if (!Array.isArray(value) || value.length !== length
      || !value.every((x) => typeof x === 'number' && Number.isFinite(x))) {
    throw new Error(`${what} must be ${length} finite numbers`);
  }
  return value as number[];
}

export function parseChartData(text: string): ChartData {
  let doc: unknown;
  try {
    doc = JSON.parse(text);
  } catch {
    throw new Error('data block is not valid JSON');
  }
  if (typeof doc !== 'object' || doc === null) {
    throw new Error('data block must be an object');
  }
  const root = doc as Record<string, unknown>;
  const months = root.months;
  if (!Array.isArray(months) || !months.every((m) => typeof m === 'string')) {
    throw new Error('months must be an array of labels');
  }
  if (!Array.isArray(root.projects)) {
    throw new Error('projects must be an array');
  }
  const projects = root.projects.map((raw, index): ProjectSeries => {
    if (typeof raw !== 'object' || raw === null) {
      throw new Error(`project ${index} is not an object`);
    }
    const p = raw as Record<string, unknown>;
    if (typeof p.id !== 'string' || !p.id) {
      throw new Error(`project ${index} is missing its id`);
    }
    return {
      id: p.id,
      median_wf: numberArray(p.median_wf, `${p.id} median_wf`, months.length),
      gppr: numberArray(p.gppr, `${p.id} gppr`, months.length),
      active: numberArray(p.active, `${p.id} active`, months.length),
      pattern: typeof p.pattern === 'string' ? p.pattern : null,
      color: PALETTE[index % PALETTE.length] as string,
    };
  });
  return { months: months as string[], projects };
}
