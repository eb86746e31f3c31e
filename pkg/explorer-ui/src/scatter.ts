import { ScatterPoint } from "./types.js";

/** SVG string rendering for the linked scatter view (support vs confidence,
 * lift as color).  Axes span [0,1]; points carry data-index for hit wiring. */

export const PLOT = {
  width: 420,
  height: 340,
  left: 44,
  right: 16,
  top: 12,
  bottom: 36,
};

function ramp(t: number): string {
  const clamp = Math.min(Math.max(t, 0), 1);
  const mix = (a: number, b: number) => Math.round(a + (b - a) * clamp);
  return `rgb(${mix(219, 179)},${mix(219, 15)},${mix(219, 15)})`;
}

export function pointPosition(p: ScatterPoint): { cx: number; cy: number } {
  const pw = PLOT.width - PLOT.left - PLOT.right;
  const ph = PLOT.height - PLOT.top - PLOT.bottom;
  return {
    cx: PLOT.left + p.x * pw,
    cy: PLOT.top + ph - p.y * ph,
  };
}

export function renderScatterSvg(
  points: ScatterPoint[],
  selected: number | null,
): string {
  const { width, height, left, right, top, bottom } = PLOT;
  const pw = width - left - right;
  const ph = height - top - bottom;
  const lifts = points.map((p) => p.shade);
  const lo = lifts.length ? Math.min(...lifts) : 0;
  const hi = lifts.length ? Math.max(...lifts) : 1;
  const span = hi - lo;

  const marks = points
    .map((p) => {
      const { cx, cy } = pointPosition(p);
      const t = span > 0 ? (p.shade - lo) / span : 0.5;
      const sel = p.ruleIndex === selected ? ' class="point selected"' : ' class="point"';
      return (
        `<circle${sel} data-index="${p.ruleIndex}" cx="${cx.toFixed(1)}" ` +
        `cy="${cy.toFixed(1)}" r="${p.ruleIndex === selected ? 5 : 3}" ` +
        `fill="${ramp(t)}" fill-opacity="0.75">` +
        `<title>rule ${p.ruleIndex}: support ${p.x.toFixed(3)}, ` +
        `confidence ${p.y.toFixed(3)}, lift ${p.shade.toFixed(2)}</title></circle>`
      );
    })
    .join("");

  const ticks = [0, 0.5, 1]
    .map((f) => {
      const x = left + f * pw;
      const y = top + ph - f * ph;
      return (
        `<text class="tick" x="${x}" y="${height - bottom + 14}" text-anchor="middle">${f}</text>` +
        `<text class="tick" x="${left - 6}" y="${y + 3}" text-anchor="end">${f}</text>`
      );
    })
    .join("");

  return (
    `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${width} ${height}" ` +
    `width="${width}" height="${height}" role="img">` +
    `<line class="axis" x1="${left}" y1="${top + ph}" x2="${left + pw}" y2="${top + ph}"/>` +
    `<line class="axis" x1="${left}" y1="${top}" x2="${left}" y2="${top + ph}"/>` +
    ticks +
    `<text class="axis-label" x="${left + pw / 2}" y="${height - 6}" text-anchor="middle">support</text>` +
    `<text class="axis-label" x="12" y="${top + ph / 2}" text-anchor="middle" ` +
    `transform="rotate(-90 12 ${top + ph / 2})">confidence</text>` +
    `<g class="points">${marks}</g>` +
    `</svg>`
  );
}
