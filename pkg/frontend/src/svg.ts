/**
 * Deterministic SVG chart rendering.  No timestamps, no randomness, and
 * every coordinate rounded to two decimals, so byte-identical inputs give
 * byte-identical images at a fixed STYLE_VERSION.
 */

import { LEVEL_COLORS, NUM_LEVELS, STYLE_VERSION } from "./palette.js";
import type { TraceFrame } from "./trace.js";
import { levelsAt, type ScheduleConfig } from "./schedule.js";

export const WIDTH = 720;
export const HEIGHT = 440;
const MARGIN = { top: 42, right: 150, bottom: 48, left: 56 };
const PLOT_W = WIDTH - MARGIN.left - MARGIN.right;
const PLOT_H = HEIGHT - MARGIN.top - MARGIN.bottom;

const FONT = `font-family="Helvetica, Arial, sans-serif"`;

function fmt(x: number): string {
  return x.toFixed(2);
}

function esc(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

function xScale(maxTick: number): (t: number) => number {
  const span = Math.max(maxTick, 1);
  return (t) => MARGIN.left + (t / span) * PLOT_W;
}

function yScale(maxValue: number): (v: number) => number {
  return (v) => MARGIN.top + PLOT_H - (v / maxValue) * PLOT_H;
}

function tickStep(maxTick: number): number {
  for (const step of [1, 2, 5, 10, 20, 25, 50, 100, 200, 500, 1000]) {
    if (maxTick / step <= 10) return step;
  }
  return Math.ceil(maxTick / 10);
}

function axes(maxTick: number, yMax: number, yStep: number, yLabel: string): string {
  const x = xScale(maxTick);
  const y = yScale(yMax);
  const parts: string[] = [];
  const bottom = MARGIN.top + PLOT_H;
  parts.push(
    `<line x1="${fmt(MARGIN.left)}" y1="${fmt(bottom)}" x2="${fmt(MARGIN.left + PLOT_W)}" y2="${fmt(bottom)}" stroke="#333" stroke-width="1"/>`,
    `<line x1="${fmt(MARGIN.left)}" y1="${fmt(MARGIN.top)}" x2="${fmt(MARGIN.left)}" y2="${fmt(bottom)}" stroke="#333" stroke-width="1"/>`,
  );
  const step = tickStep(maxTick);
  for (let t = 0; t <= maxTick; t += step) {
    const px = x(t);
    parts.push(
      `<line x1="${fmt(px)}" y1="${fmt(bottom)}" x2="${fmt(px)}" y2="${fmt(bottom + 5)}" stroke="#333" stroke-width="1"/>`,
      `<text x="${fmt(px)}" y="${fmt(bottom + 18)}" ${FONT} font-size="11" text-anchor="middle" fill="#333">${t}</text>`,
    );
  }
  for (let v = 0; v <= yMax + 1e-9; v += yStep) {
    const py = y(v);
    parts.push(
      `<line x1="${fmt(MARGIN.left - 5)}" y1="${fmt(py)}" x2="${fmt(MARGIN.left)}" y2="${fmt(py)}" stroke="#333" stroke-width="1"/>`,
      `<line x1="${fmt(MARGIN.left)}" y1="${fmt(py)}" x2="${fmt(MARGIN.left + PLOT_W)}" y2="${fmt(py)}" stroke="#ddd" stroke-width="0.5"/>`,
      `<text x="${fmt(MARGIN.left - 9)}" y="${fmt(py + 4)}" ${FONT} font-size="11" text-anchor="end" fill="#333">${yStep < 1 ? v.toFixed(2) : v}</text>`,
    );
  }
  parts.push(
    `<text x="${fmt(MARGIN.left + PLOT_W / 2)}" y="${fmt(bottom + 36)}" ${FONT} font-size="12" text-anchor="middle" fill="#333">tick</text>`,
    `<text x="16" y="${fmt(MARGIN.top + PLOT_H / 2)}" ${FONT} font-size="12" text-anchor="middle" fill="#333" transform="rotate(-90 16 ${fmt(MARGIN.top + PLOT_H / 2)})">${esc(yLabel)}</text>`,
  );
  return parts.join("\n");
}

function legend(labels: string[]): string {
  const parts: string[] = [];
  const lx = MARGIN.left + PLOT_W + 16;
  labels.forEach((label, i) => {
    const ly = MARGIN.top + 14 + i * 20;
    parts.push(
      `<line x1="${fmt(lx)}" y1="${fmt(ly)}" x2="${fmt(lx + 22)}" y2="${fmt(ly)}" stroke="${LEVEL_COLORS[i]}" stroke-width="2.5"/>`,
      `<text x="${fmt(lx + 28)}" y="${fmt(ly + 4)}" ${FONT} font-size="11" fill="#333">${esc(label)}</text>`,
    );
  });
  return parts.join("\n");
}

function document(title: string, body: string): string {
  return [
    `<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" height="${HEIGHT}" viewBox="0 0 ${WIDTH} ${HEIGHT}" data-style-version="${STYLE_VERSION}">`,
    `<rect width="${WIDTH}" height="${HEIGHT}" fill="#ffffff"/>`,
    `<text x="${fmt(WIDTH / 2)}" y="24" ${FONT} font-size="14" font-weight="bold" text-anchor="middle" fill="#111">${esc(title)}</text>`,
    body,
    `</svg>`,
    ``,
  ].join("\n");
}

/** Per-level belief fractions over time, with a +-1 std band when present. */
export function traceChartSvg(frame: TraceFrame, title: string): string {
  const maxTick = frame.rows[frame.rows.length - 1].tick;
  const x = xScale(maxTick);
  const y = yScale(1.0);
  const parts: string[] = [axes(maxTick, 1.0, 0.25, "fraction of agents")];
  for (let b = 0; b < NUM_LEVELS; b++) {
    if (frame.hasVariance) {
      const upper = frame.rows.map(
        (r) => `${fmt(x(r.tick))},${fmt(y(Math.min(1, r.means[b] + Math.sqrt(r.vars[b]))))}`,
      );
      const lower = frame.rows
        .slice()
        .reverse()
        .map((r) => `${fmt(x(r.tick))},${fmt(y(Math.max(0, r.means[b] - Math.sqrt(r.vars[b]))))}`);
      parts.push(
        `<polygon points="${upper.concat(lower).join(" ")}" fill="${LEVEL_COLORS[b]}" fill-opacity="0.15" stroke="none"/>`,
      );
    }
    const points = frame.rows.map((r) => `${fmt(x(r.tick))},${fmt(y(r.means[b]))}`);
    parts.push(
      `<polyline points="${points.join(" ")}" fill="none" stroke="${LEVEL_COLORS[b]}" stroke-width="2"/>`,
    );
  }
  parts.push(legend(Array.from({ length: NUM_LEVELS }, (_, b) => `level ${b}`)));
  return document(title, parts.join("\n"));
}

/** Broadcast level over time as a step plot; extra same-tick levels get markers. */
export function scheduleChartSvg(config: ScheduleConfig, title: string, horizon: number): string {
  const x = xScale(horizon);
  const y = yScale(6);
  const primary: (number | null)[] = [];
  const extras: Array<[number, number]> = [];
  for (let t = 1; t <= horizon; t++) {
    let levels: number[];
    try {
      levels = levelsAt(config, t);
    } catch {
      primary.push(null);
      continue;
    }
    primary.push(levels[0] ?? null);
    for (const extra of levels.slice(1)) extras.push([t, extra]);
  }
  const parts: string[] = [axes(horizon, 6, 1, "broadcast level")];
  let d = "";
  let prev: number | null = null;
  for (let t = 1; t <= horizon; t++) {
    const level = primary[t - 1];
    if (level === null) {
      prev = null;
      continue;
    }
    if (prev === null) {
      d += `M ${fmt(x(t))} ${fmt(y(level))} `;
    } else {
      d += `H ${fmt(x(t))} `;
      if (level !== prev) d += `V ${fmt(y(level))} `;
    }
    prev = level;
  }
  if (prev !== null) d += `H ${fmt(x(horizon))}`;
  parts.push(`<path d="${d.trim()}" fill="none" stroke="${LEVEL_COLORS[6]}" stroke-width="2.5"/>`);
  for (const [t, level] of extras) {
    parts.push(
      `<circle cx="${fmt(x(t))}" cy="${fmt(y(level))}" r="3" fill="${LEVEL_COLORS[level]}"/>`,
    );
  }
  return document(title, parts.join("\n"));
}
