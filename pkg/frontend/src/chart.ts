/** Minimal dependency-free SVG line chart for sweep results. */

import type { SweepReport } from './types.js';

export interface ChartPoint {
  x: number;
  y: number;
  label: string;
}

export function sweepPoints(report: SweepReport): ChartPoint[] {
  return report.results.map((row) => ({
    x: Number(row.value),
    y: Number(row.roi_percent),
    label: `${row.value} → ${row.roi_percent}%`,
  }));
}

export function renderSweepChart(
  report: SweepReport,
  highlightValue: string | null,
  width = 560,
  height = 260,
): string {
  const points = sweepPoints(report);
  if (points.length === 0) return '<svg></svg>';
  const pad = 48;
  const xs = points.map((p) => p.x);
  const ys = points.map((p) => p.y);
  const xMin = Math.min(...xs);
  const xMax = Math.max(...xs);
  const yMin = Math.min(...ys);
  const yMax = Math.max(...ys);
  const xSpan = xMax - xMin || 1;
  const ySpan = yMax - yMin || 1;
  const toX = (x: number) => pad + ((x - xMin) / xSpan) * (width - 2 * pad);
  const toY = (y: number) => height - pad - ((y - yMin) / ySpan) * (height - 2 * pad);

  const path = points
    .map((p, i) => `${i === 0 ? 'M' : 'L'}${toX(p.x).toFixed(1)},${toY(p.y).toFixed(1)}`)
    .join(' ');
  const dots = points
    .map((p) => {
      const highlighted = highlightValue !== null && Number(highlightValue) === p.x;
      const r = highlighted ? 6 : 3;
      const cls = highlighted ? 'dot current' : 'dot';
      return `<circle class="${cls}" cx="${toX(p.x).toFixed(1)}" cy="${toY(p.y).toFixed(1)}" r="${r}"><title>${p.label}</title></circle>`;
    })
    .join('');
  return [
    `<svg viewBox="0 0 ${width} ${height}" role="img" aria-label="ROI versus ${report.param}">`,
    `<line class="axis" x1="${pad}" y1="${height - pad}" x2="${width - pad}" y2="${height - pad}"/>`,
    `<line class="axis" x1="${pad}" y1="${pad}" x2="${pad}" y2="${height - pad}"/>`,
    `<text class="tick" x="${pad}" y="${height - pad + 18}">${xMin}</text>`,
    `<text class="tick" x="${width - pad}" y="${height - pad + 18}" text-anchor="end">${xMax}</text>`,
    `<text class="tick" x="${pad - 6}" y="${height - pad}" text-anchor="end">${yMin.toFixed(2)}</text>`,
    `<text class="tick" x="${pad - 6}" y="${pad + 4}" text-anchor="end">${yMax.toFixed(2)}</text>`,
    `<path class="line" d="${path}"/>`,
    dots,
    '</svg>',
  ].join('');
}
