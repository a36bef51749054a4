/** Recipe + table -> scene, for the three figure kinds. */

import { Table, numericColumn, stringColumn, columnIndex } from "./csv";
import { isoSegments, labelBoundarySegments } from "./contour";
import { FigureRecipe, seriesColumns } from "./recipe";
import {
  Frame,
  Scene,
  SERIES_COLORS,
  divergingColor,
  drawFrame,
  formatTick,
  linearScale,
  paddedDomain,
} from "./scene";

const DEFAULT_WIDTH = 560;
const DEFAULT_HEIGHT = 400;

function newScene(recipe: FigureRecipe): Scene {
  return {
    width: recipe.width ?? DEFAULT_WIDTH,
    height: recipe.height ?? DEFAULT_HEIGHT,
    background: "#fbfbfb",
    items: [],
  };
}

function legend(scene: Scene, frame: Frame, entries: Array<[string, string]>): void {
  let y = frame.plot.top + 14;
  const x = frame.plot.right - 12;
  for (const [label, color] of entries) {
    scene.items.push({ kind: "line", x1: x - 26, y1: y - 3, x2: x - 10, y2: y - 3, stroke: color, width: 2 });
    scene.items.push({ kind: "text", x: x - 32, y, text: label, size: 10, anchor: "end", fill: "#333333" });
    y += 14;
  }
}

export function buildScene(recipe: FigureRecipe, table: Table): Scene {
  if (table.rows.length === 0) {
    throw new Error("CSV has a header but no data rows; nothing to render");
  }
  switch (recipe.kind) {
    case "line1d":
      return buildLine1d(recipe, table);
    case "scatter_n":
      return buildScatter(recipe, table);
    case "heatmap2d":
      return buildHeatmap(recipe, table);
  }
}

function buildLine1d(recipe: FigureRecipe, table: Table): Scene {
  const scene = newScene(recipe);
  const xs = numericColumn(table, recipe.x);
  const series = seriesColumns(recipe).map(
    (name) => [name, numericColumn(table, name)] as const,
  );
  const allY = series.flatMap(([, v]) => v);
  const frame = drawFrame(
    scene,
    paddedDomain(xs),
    paddedDomain(allY),
    recipe.x,
    seriesColumns(recipe).join(", "),
    recipe.title,
  );
  series.forEach(([name, values], k) => {
    const color = SERIES_COLORS[k % SERIES_COLORS.length];
    const points = xs
      .map((x, row) => [x, values[row]] as [number, number])
      .filter(([x, y]) => Number.isFinite(x) && Number.isFinite(y))
      .sort((a, b) => a[0] - b[0]);
    scene.items.push({
      kind: "polyline",
      points: points.map(([x, y]) => [frame.xScale(x), frame.yScale(y)]),
      stroke: color,
      width: 1.5,
    });
  });
  if (series.length > 1) {
    legend(scene, frame, series.map(([name], k) => [name, SERIES_COLORS[k % SERIES_COLORS.length]]));
  }
  return scene;
}

function buildScatter(recipe: FigureRecipe, table: Table): Scene {
  const scene = newScene(recipe);
  const xs = numericColumn(table, recipe.x);
  const yName = seriesColumns(recipe)[0];
  const ys = numericColumn(table, yName);
  const groups = recipe.group_by ? stringColumn(table, recipe.group_by) : xs.map(() => "");
  const reduce = recipe.aggregate === "min" ? Math.min : Math.max;
  // one marker per (x, group): the aggregate of y over matching rows
  const buckets = new Map<string, { x: number; group: string; y: number }>();
  xs.forEach((x, row) => {
    const y = ys[row];
    if (!Number.isFinite(x) || !Number.isFinite(y)) return;
    const key = `${x}|${groups[row]}`;
    const existing = buckets.get(key);
    if (existing === undefined) {
      buckets.set(key, { x, group: groups[row], y });
    } else {
      existing.y = reduce(existing.y, y);
    }
  });
  const points = [...buckets.values()];
  if (points.length === 0) {
    throw new Error("no finite values to plot");
  }
  const frame = drawFrame(
    scene,
    paddedDomain(points.map((p) => p.x)),
    paddedDomain(points.map((p) => p.y)),
    recipe.x,
    `${recipe.aggregate ?? "max"} ${yName}`,
    recipe.title,
  );
  const groupNames = [...new Set(points.map((p) => p.group))].sort();
  for (const p of points) {
    const color = SERIES_COLORS[groupNames.indexOf(p.group) % SERIES_COLORS.length];
    scene.items.push({
      kind: "circle", cx: frame.xScale(p.x), cy: frame.yScale(p.y), r: 4, fill: color,
    });
  }
  if (recipe.group_by) {
    legend(scene, frame, groupNames.map((g, k) => [
      `${recipe.group_by}=${g}`, SERIES_COLORS[k % SERIES_COLORS.length],
    ]));
  }
  return scene;
}

interface Grid {
  xs: number[];
  ys: number[];
  values: number[][];
  labels: string[][];
}

function gridFromTable(recipe: FigureRecipe, table: Table): Grid {
  const xName = recipe.x;
  const yName = seriesColumns(recipe)[0];
  const zName = recipe.z as string;
  const xs = numericColumn(table, xName);
  const ys = numericColumn(table, yName);
  const zs = numericColumn(table, zName);
  const regimeName = recipe.regime_column ?? "regime";
  const regimes = recipe.regime_boundaries
    ? stringColumn(table, regimeName)
    : table.rows.map(() => "");
  const uniq = (v: number[]) => [...new Set(v.filter((x) => Number.isFinite(x)))].sort((a, b) => a - b);
  const ux = uniq(xs);
  const uy = uniq(ys);
  if (ux.length < 2 || uy.length < 2) {
    throw new Error(
      `heatmap needs at least a 2x2 grid; got ${ux.length} x values and ${uy.length} y values`,
    );
  }
  const values = ux.map(() => uy.map(() => NaN));
  const labels = ux.map(() => uy.map(() => ""));
  xs.forEach((x, row) => {
    const i = ux.indexOf(x);
    const j = uy.indexOf(ys[row]);
    if (i < 0 || j < 0) return;
    values[i][j] = zs[row];
    // the +/-/0 power suffix is not a regime change; strip it
    labels[i][j] = regimes[row].replace(/[+\-0]$/, "");
  });
  return { xs: ux, ys: uy, values, labels };
}

function buildHeatmap(recipe: FigureRecipe, table: Table): Scene {
  const scene = newScene(recipe);
  const grid = gridFromTable(recipe, table);
  const zName = recipe.z as string;
  const finite = grid.values.flat().filter((v) => Number.isFinite(v));
  if (finite.length === 0) {
    throw new Error("no finite values to plot");
  }
  const zMax = Math.max(...finite.map((v) => Math.abs(v)), 1e-300);
  const frame = drawFrame(
    scene,
    [grid.xs[0], grid.xs[grid.xs.length - 1]],
    [grid.ys[0], grid.ys[grid.ys.length - 1]],
    recipe.x,
    seriesColumns(recipe)[0],
    recipe.title ?? zName,
  );
  const edges = (centers: number[]) => {
    const out = [centers[0] - (centers[1] - centers[0]) / 2];
    for (let k = 0; k + 1 < centers.length; k++) {
      out.push((centers[k] + centers[k + 1]) / 2);
    }
    const last = centers.length - 1;
    out.push(centers[last] + (centers[last] - centers[last - 1]) / 2);
    return out;
  };
  // cells are clipped to the frame so the outermost rows stay inside
  const ex = edges(grid.xs).map((v) => Math.min(Math.max(v, grid.xs[0]), grid.xs[grid.xs.length - 1]));
  const ey = edges(grid.ys).map((v) => Math.min(Math.max(v, grid.ys[0]), grid.ys[grid.ys.length - 1]));
  for (let i = 0; i < grid.xs.length; i++) {
    for (let j = 0; j < grid.ys.length; j++) {
      const v = grid.values[i][j];
      if (!Number.isFinite(v)) continue;
      const x0 = frame.xScale(ex[i]);
      const x1 = frame.xScale(ex[i + 1]);
      const y0 = frame.yScale(ey[j + 1]);
      const y1 = frame.yScale(ey[j]);
      scene.items.push({
        kind: "rect", x: x0, y: y0, w: x1 - x0, h: y1 - y0,
        fill: divergingColor(v / zMax),
      });
    }
  }
  for (const spec of recipe.contours ?? []) {
    const field = spec.column === undefined || spec.column === zName
      ? grid.values
      : gridFromTable({ ...recipe, z: spec.column }, table).values;
    for (const [[ax, ay], [bx, by]] of isoSegments(grid.xs, grid.ys, field, spec.level)) {
      scene.items.push({
        kind: "line",
        x1: frame.xScale(ax), y1: frame.yScale(ay),
        x2: frame.xScale(bx), y2: frame.yScale(by),
        stroke: "#000000", width: 1.8,
      });
    }
  }
  if (recipe.regime_boundaries) {
    for (const [[ax, ay], [bx, by]] of labelBoundarySegments(grid.xs, grid.ys, grid.labels)) {
      scene.items.push({
        kind: "line",
        x1: frame.xScale(ax), y1: frame.yScale(ay),
        x2: frame.xScale(bx), y2: frame.yScale(by),
        stroke: "#222222", width: 1.2, dash: [5, 4],
      });
    }
  }
  // compact colorbar under the title, drawn as discrete swatches
  const barLeft = frame.plot.right - 130;
  const barTop = frame.plot.top + 8;
  const swatches = 24;
  const barScale = linearScale([0, swatches], [barLeft, barLeft + 96]);
  for (let k = 0; k < swatches; k++) {
    scene.items.push({
      kind: "rect", x: barScale(k), y: barTop, w: barScale(k + 1) - barScale(k), h: 8,
      fill: divergingColor((2 * k) / (swatches - 1) - 1),
    });
  }
  scene.items.push({
    kind: "text", x: barLeft - 4, y: barTop + 8, text: formatTick(-zMax),
    size: 9, anchor: "end", fill: "#333333",
  });
  scene.items.push({
    kind: "text", x: barLeft + 100, y: barTop + 8, text: formatTick(zMax),
    size: 9, anchor: "start", fill: "#333333",
  });
  return scene;
}

/** Ensure every column the recipe references exists (fail fast with the
 * available-column list). */
export function checkColumns(recipe: FigureRecipe, table: Table): void {
  const needed = [recipe.x, ...seriesColumns(recipe)];
  if (recipe.kind === "heatmap2d") {
    needed.push(recipe.z as string);
    for (const spec of recipe.contours ?? []) {
      if (spec.column) needed.push(spec.column);
    }
    if (recipe.regime_boundaries) needed.push(recipe.regime_column ?? "regime");
  }
  if (recipe.group_by) needed.push(recipe.group_by);
  for (const name of needed) {
    columnIndex(table, name);
  }
}
