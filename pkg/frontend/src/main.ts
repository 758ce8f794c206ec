// Report entry point: read the inline data block, mount the chart.
//
// Failures surface as a visible message inside the chart container, never
// as console-only errors. Everything here runs offline; the only inputs
// are the two elements the report inlines.

import { init, setMonth } from './chart';
import { parseChartData } from './data';

const DATA_ID = 'vitals-data';
const MOUNT_ID = 'vitals-chart';

export function boot(doc: Document = document): void {
  const container = doc.getElementById(MOUNT_ID);
  if (!container) return;
  try {
    const block = doc.getElementById(DATA_ID);
    if (!block) throw new Error(`missing inline data block #${DATA_ID}`);
    init(container, parseChartData(block.textContent ?? ''));
  } catch (err) {
    container.textContent = '';
    const message = document.createElement('p');
    message.className = 'vitals-error';
    message.textContent =
      `Could not render the chart: ${err instanceof Error ? err.message : err}`;
    container.appendChild(message);
  }
}

declare global {
  interface Window {
    VitalsChart?: { boot: typeof boot; init: typeof init; setMonth: typeof setMonth };
  }
}

if (typeof window !== 'undefined') {
  window.VitalsChart = { boot, init, setMonth };
  if (document.readyState === 'loading') {
    document.addEventListener('DOMContentLoaded', () => boot());
  } else {
    boot();
  }
}
