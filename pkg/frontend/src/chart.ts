// Animated health-vs-wealth bubble chart.
//
// x = wealth (GPPR), y = health (median workforce), bubble area tracks the
// active-contributor count, one color per project, with per-project trails
// of earlier months. A frame is a pure function of (data, month index,
// scale kind): revisiting a month reproduces identical markup, which is
// what the scrub/jump tests assert.

import type { ChartData, ProjectSeries } from './data';
import { formatTick, makeScale, project, Scale, ScaleKind, ticks } from './scale';

const SVG_NS = 'http://www.w3.org/2000/svg';
const W = 900;
const H = 520;
const MARGIN = { top: 20, right: 24, bottom: 56, left: 68 };
const PLAY_INTERVAL_MS = 700;

export interface ChartHandle {
  container: HTMLElement;
  data: ChartData;
  month: number;
  scaleKind: ScaleKind;
  playing: boolean;
  timer: ReturnType<typeof setInterval> | null;
  svg: SVGSVGElement;
  axesLayer: SVGGElement;
  frameLayer: SVGGElement;
  scrubber: HTMLInputElement;
  monthLabel: HTMLElement;
  playButton: HTMLButtonElement;
}

function svgEl<K extends keyof SVGElementTagNameMap>(
    tag: K, attrs: Record<string, string> = {}): SVGElementTagNameMap[K] {
  const el = document.createElementNS(SVG_NS, tag);
  for (const [key, value] of Object.entries(attrs)) el.setAttribute(key, value);
  return el;
}

function el<K extends keyof HTMLElementTagNameMap>(
    tag: K, className: string, text = ''): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  node.className = className;
  if (text) node.textContent = text;
  return node;
}

// -- scales ------------------------------------------------------------------

function xScale(data: ChartData, kind: ScaleKind): Scale {
  return makeScale(kind, data.projects.flatMap((p) => p.gppr),
                   MARGIN.left, W - MARGIN.right);
}

function yScale(data: ChartData): Scale {
  return makeScale('linear', data.projects.flatMap((p) => p.median_wf),
                   H - MARGIN.bottom, MARGIN.top);
}

function maxActive(data: ChartData): number {
  return Math.max(1, ...data.projects.flatMap((p) => p.active));
}

function radius(active: number, biggest: number): number {
  return 3 + 22 * Math.sqrt(Math.max(active, 0) / biggest);
}

// -- rendering ----------------------------------------------------------------

function renderAxes(handle: ChartHandle): void {
  const { data, scaleKind, axesLayer } = handle;
  axesLayer.textContent = '';
  const sx = xScale(data, scaleKind);
  const sy = yScale(data);
  const x0 = MARGIN.left;
  const x1 = W - MARGIN.right;
  const y0 = H - MARGIN.bottom;

  axesLayer.appendChild(svgEl('line', {
    x1: `${x0}`, y1: `${y0}`, x2: `${x1}`, y2: `${y0}`, stroke: '#90a0b0' }));
  axesLayer.appendChild(svgEl('line', {
    x1: `${x0}`, y1: `${MARGIN.top}`, x2: `${x0}`, y2: `${y0}`, stroke: '#90a0b0' }));

  for (const value of ticks(sx)) {
    const x = project(sx, value).toFixed(2);
    axesLayer.appendChild(svgEl('line', {
      x1: x, y1: `${y0}`, x2: x, y2: `${y0 + 5}`, stroke: '#90a0b0' }));
    const label = svgEl('text', {
      x, y: `${y0 + 20}`, 'text-anchor': 'middle', class: 'vitals-tick' });
    label.textContent = formatTick(value);
    axesLayer.appendChild(label);
  }
  for (const value of ticks(sy)) {
    const y = project(sy, value).toFixed(2);
    axesLayer.appendChild(svgEl('line', {
      x1: `${x0 - 5}`, y1: y, x2: `${x0}`, y2: y, stroke: '#90a0b0' }));
    const label = svgEl('text', {
      x: `${x0 - 9}`, y, 'text-anchor': 'end', dy: '0.32em', class: 'vitals-tick' });
    label.textContent = formatTick(value);
    axesLayer.appendChild(label);
  }

  const xTitle = svgEl('text', {
    x: `${(x0 + x1) / 2}`, y: `${H - 14}`, 'text-anchor': 'middle',
    class: 'vitals-axis-title' });
  xTitle.textContent = scaleKind === 'log'
    ? 'Wealth: GPPR, completed pull requests (log)'
    : 'Wealth: GPPR, completed pull requests';
  axesLayer.appendChild(xTitle);

  const yTitle = svgEl('text', {
    x: '16', y: `${MARGIN.top + 4}`, class: 'vitals-axis-title' });
  yTitle.textContent = 'Health: median workforce';
  axesLayer.appendChild(yTitle);
}

function renderFrame(handle: ChartHandle): void {
  const { data, month, scaleKind, frameLayer } = handle;
  frameLayer.textContent = '';
  const sx = xScale(data, scaleKind);
  const sy = yScale(data);
  const biggest = maxActive(data);

  for (const p of data.projects) {
    const trail = trailPoints(p, month, sx, sy);
    if (trail) {
      frameLayer.appendChild(svgEl('polyline', {
        points: trail, fill: 'none', stroke: p.color,
        'stroke-opacity': '0.35', 'stroke-width': '1.5',
        class: 'vitals-trail', 'data-project': p.id }));
    }
  }
  for (const p of data.projects) {
    const wf = p.median_wf[month] ?? 0;
    const gp = p.gppr[month] ?? 0;
    const active = p.active[month] ?? 0;
    const bubble = svgEl('circle', {
      cx: project(sx, gp).toFixed(2),
      cy: project(sy, wf).toFixed(2),
      r: radius(active, biggest).toFixed(2),
      fill: p.color,
      'fill-opacity': '0.55',
      stroke: p.color,
      class: 'vitals-bubble',
      'data-project': p.id,
      'data-wf': `${wf}`,
      'data-gppr': `${gp}`,
      'data-active': `${active}`,
    });
    const hover = svgEl('title');
    hover.textContent =
      `${p.id} (${data.months[month]}): health ${wf}, wealth ${gp}, `
      + `${active} contributor(s)${p.pattern ? `, ${p.pattern}` : ''}`;
    bubble.appendChild(hover);
    frameLayer.appendChild(bubble);
  }

  handle.monthLabel.textContent = data.months[month] ?? '';
  handle.scrubber.value = `${month}`;
}

function trailPoints(p: ProjectSeries, upTo: number,
                     sx: Scale, sy: Scale): string | null {
  if (upTo < 1) return null;
  const points: string[] = [];
  for (let i = 0; i <= upTo; i += 1) {
    points.push(`${project(sx, p.gppr[i] ?? 0).toFixed(2)},`
      + `${project(sy, p.median_wf[i] ?? 0).toFixed(2)}`);
  }
  return points.join(' ');
}

// -- public surface -------------------------------------------------------------

export function setMonth(handle: ChartHandle, index: number): void {
  const last = handle.data.months.length - 1;
  const clamped = Math.min(Math.max(Math.round(index), 0), Math.max(last, 0));
  handle.month = clamped;
  renderFrame(handle);
}

export function setScaleKind(handle: ChartHandle, kind: ScaleKind): void {
  handle.scaleKind = kind;
  renderAxes(handle);
  renderFrame(handle);
}

export function pause(handle: ChartHandle): void {
  handle.playing = false;
  if (handle.timer !== null) clearInterval(handle.timer);
  handle.timer = null;
  handle.playButton.textContent = 'Play';
}

export function play(handle: ChartHandle): void {
  if (handle.playing) return;
  if (handle.month >= handle.data.months.length - 1) setMonth(handle, 0);
  handle.playing = true;
  handle.playButton.textContent = 'Pause';
  handle.timer = setInterval(() => {
    if (handle.month >= handle.data.months.length - 1) {
      pause(handle);
      return;
    }
    setMonth(handle, handle.month + 1);
  }, PLAY_INTERVAL_MS);
}

export function init(container: HTMLElement, data: ChartData): ChartHandle | null {
  container.textContent = '';
  if (!data.projects.length || !data.months.length) {
    container.appendChild(el('p', 'vitals-empty',
                             'No project data to chart.'));
    return null;
  }

  const controls = el('div', 'vitals-controls');
  const playButton = el('button', 'vitals-play', 'Play');
  playButton.type = 'button';
  const scrubber = document.createElement('input');
  scrubber.type = 'range';
  scrubber.className = 'vitals-scrub';
  scrubber.min = '0';
  scrubber.max = `${data.months.length - 1}`;
  scrubber.step = '1';
  scrubber.value = '0';
  const monthLabel = el('span', 'vitals-month', data.months[0] ?? '');
  const scaleToggle = document.createElement('input');
  scaleToggle.type = 'checkbox';
  scaleToggle.className = 'vitals-log-toggle';
  const toggleLabel = el('label', 'vitals-log-label', '');
  toggleLabel.appendChild(scaleToggle);
  toggleLabel.appendChild(document.createTextNode(' log wealth axis'));
  controls.append(playButton, scrubber, monthLabel, toggleLabel);

  const svg = svgEl('svg', {
    viewBox: `0 0 ${W} ${H}`, width: '100%', role: 'img',
    'aria-label': 'Animated health versus wealth bubble chart' });
  const axesLayer = svgEl('g', { class: 'vitals-axes' });
  const frameLayer = svgEl('g', { class: 'vitals-frame-layer' });
  svg.append(axesLayer, frameLayer);

  const legend = el('div', 'vitals-legend');
  for (const p of data.projects) {
    const item = el('span', 'vitals-legend-item', '');
    const chip = el('span', 'vitals-chip', '');
    chip.style.background = p.color;
    item.append(chip, document.createTextNode(
      p.pattern ? ` ${p.id} (${p.pattern})` : ` ${p.id}`));
    legend.appendChild(item);
  }

  container.append(controls, svg, legend);

  const handle: ChartHandle = {
    container, data, month: 0, scaleKind: 'linear', playing: false,
    timer: null, svg, axesLayer, frameLayer, scrubber, monthLabel, playButton,
  };

  playButton.addEventListener('click', () => {
    if (handle.playing) pause(handle);
    else play(handle);
  });
  scrubber.addEventListener('input', () => {
    pause(handle);
    setMonth(handle, Number(scrubber.value));
  });
  scaleToggle.addEventListener('change', () => {
    setScaleKind(handle, scaleToggle.checked ? 'log' : 'linear');
  });

  renderAxes(handle);
  renderFrame(handle);
  return handle;
}
