/** Device-independent scene graph shared by the SVG and PNG writers. */

export type Anchor = "start" | "middle" | "end";

export type Primitive =
  | { kind: "rect"; x: number; y: number; w: number; h: number; fill: string }
  | {
      kind: "line";
      x1: number;
      y1: number;
      x2: number;
      y2: number;
      stroke: string;
      width: number;
      dash?: number[];
    }
  | {
      kind: "polyline";
      points: Array<[number, number]>;
      stroke: string;
      width: number;
      dash?: number[];
    }
  | { kind: "circle"; cx: number; cy: number; r: number; fill: string }
  | {
      kind: "text";
      x: number;
      y: number;
      text: string;
      size: number;
      anchor: Anchor;
      fill: string;
    };

export interface Scene {
  width: number;
  height: number;
  background: string;
  items: Primitive[];
}

export interface LinearScale {
  (value: number): number;
  domain: [number, number];
  range: [number, number];
}

export function linearScale(domain: [number, number], range: [number, number]): LinearScale {
  const [d0, d1] = domain;
  const [r0, r1] = range;
  const span = d1 - d0 === 0 ? 1 : d1 - d0;
  const scale = ((value: number) => r0 + ((value - d0) / span) * (r1 - r0)) as LinearScale;
  scale.domain = domain;
  scale.range = range;
  return scale;
}

/** Round tick positions covering the domain (inclusive-ish), about n of them. */
export function ticks(domain: [number, number], count = 5): number[] {
  const [lo, hi] = domain;
  if (!(hi > lo)) return [lo];
  const rawStep = (hi - lo) / Math.max(1, count);
  const mag = Math.pow(10, Math.floor(Math.log10(rawStep)));
  const norm = rawStep / mag;
  const step = (norm >= 5 ? 5 : norm >= 2 ? 2 : 1) * mag;
  const start = Math.ceil(lo / step) * step;
  const out: number[] = [];
  for (let v = start; v <= hi + step * 1e-9; v += step) {
    out.push(Math.abs(v) < step * 1e-9 ? 0 : v);
  }
  return out;
}

export function formatTick(value: number): string {
  if (value === 0) return "0";
  const abs = Math.abs(value);
  if (abs >= 1e4 || abs < 1e-3) return value.toExponential(1);
  return String(parseFloat(value.toPrecision(6)));
}

/** Categorical series palette (fixed order, deterministic). */
export const SERIES_COLORS = [
  "#1f6fb4",
  "#d1495b",
  "#2e8b57",
  "#b8860b",
  "#6a4fb3",
  "#17889c",
];

function channel(a: number, b: number, t: number): number {
  return Math.round(a + (b - a) * t);
}

function hex(r: number, g: number, b: number): string {
  const h = (v: number) => v.toString(16).padStart(2, "0");
  return `#${h(r)}${h(g)}${h(b)}`;
}

/** Diverging blue-white-red map on [-1, 1] (used centered on zero). */
export function divergingColor(t: number): string {
  const x = Math.max(-1, Math.min(1, t));
  if (x < 0) {
    const u = x + 1; // 0 at deep blue, 1 at white
    return hex(channel(33, 255, u), channel(102, 255, u), channel(172, 255, u));
  }
  const u = x; // 0 at white, 1 at deep red
  return hex(channel(255, 178, u), channel(255, 24, u), channel(255, 43, u));
}

export interface Frame {
  xScale: LinearScale;
  yScale: LinearScale;
  plot: { left: number; top: number; right: number; bottom: number };
}

/** Axes, tick marks, tick labels, axis titles and the plot frame. */
export function drawFrame(
  scene: Scene,
  xDomain: [number, number],
  yDomain: [number, number],
  xLabel: string,
  yLabel: string,
  title?: string,
): Frame {
  const margin = { left: 62, right: 24, top: title ? 34 : 18, bottom: 46 };
  const plot = {
    left: margin.left,
    top: margin.top,
    right: scene.width - margin.right,
    bottom: scene.height - margin.bottom,
  };
  const xScale = linearScale(xDomain, [plot.left, plot.right]);
  const yScale = linearScale(yDomain, [plot.bottom, plot.top]);
  scene.items.push({
    kind: "rect",
    x: plot.left,
    y: plot.top,
    w: plot.right - plot.left,
    h: plot.bottom - plot.top,
    fill: "#ffffff",
  });
  const axisColor = "#333333";
  for (const t of ticks(xDomain)) {
    const px = xScale(t);
    scene.items.push({
      kind: "line", x1: px, y1: plot.bottom, x2: px, y2: plot.bottom + 4,
      stroke: axisColor, width: 1,
    });
    scene.items.push({
      kind: "text", x: px, y: plot.bottom + 16, text: formatTick(t),
      size: 10, anchor: "middle", fill: axisColor,
    });
  }
  for (const t of ticks(yDomain)) {
    const py = yScale(t);
    scene.items.push({
      kind: "line", x1: plot.left - 4, y1: py, x2: plot.left, y2: py,
      stroke: axisColor, width: 1,
    });
    scene.items.push({
      kind: "text", x: plot.left - 7, y: py + 3, text: formatTick(t),
      size: 10, anchor: "end", fill: axisColor,
    });
  }
  // frame
  scene.items.push({ kind: "line", x1: plot.left, y1: plot.top, x2: plot.left, y2: plot.bottom, stroke: axisColor, width: 1 });
  scene.items.push({ kind: "line", x1: plot.left, y1: plot.bottom, x2: plot.right, y2: plot.bottom, stroke: axisColor, width: 1 });
  scene.items.push({ kind: "line", x1: plot.right, y1: plot.top, x2: plot.right, y2: plot.bottom, stroke: axisColor, width: 1 });
  scene.items.push({ kind: "line", x1: plot.left, y1: plot.top, x2: plot.right, y2: plot.top, stroke: axisColor, width: 1 });
  scene.items.push({
    kind: "text", x: (plot.left + plot.right) / 2, y: scene.height - 10,
    text: xLabel, size: 11, anchor: "middle", fill: axisColor,
  });
  scene.items.push({
    kind: "text", x: 14, y: plot.top - 6, text: yLabel, size: 11,
    anchor: "start", fill: axisColor,
  });
  if (title) {
    scene.items.push({
      kind: "text", x: (plot.left + plot.right) / 2, y: 16, text: title,
      size: 12, anchor: "middle", fill: "#000000",
    });
  }
  return { xScale, yScale, plot };
}

/** Pad a [min, max] pair so flat data still spans a drawable interval. */
export function paddedDomain(values: number[]): [number, number] {
  const finite = values.filter((v) => Number.isFinite(v));
  if (finite.length === 0) {
    throw new Error("no finite values to plot");
  }
  let lo = Math.min(...finite);
  let hi = Math.max(...finite);
  if (lo === hi) {
    const pad = lo === 0 ? 1 : Math.abs(lo) * 0.1;
    return [lo - pad, hi + pad];
  }
  const pad = (hi - lo) * 0.05;
  return [lo - pad, hi + pad];
}
