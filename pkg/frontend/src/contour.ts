/** Iso-level contours (marching squares) and categorical cell boundaries.
 *
 * Grids are index-addressed: value[i][j] sits at (xs[i], ys[j]). NaN cells
 * (failed sweep points) suppress any segment touching them.
 */

export type Segment = [[number, number], [number, number]];

function interp(a: number, b: number, va: number, vb: number, level: number): number {
  if (va === vb) return (a + b) / 2;
  return a + ((level - va) / (vb - va)) * (b - a);
}

/** Line segments of the iso-level curve of a scalar grid. */
export function isoSegments(
  xs: number[],
  ys: number[],
  values: number[][],
  level: number,
): Segment[] {
  const segments: Segment[] = [];
  for (let i = 0; i + 1 < xs.length; i++) {
    for (let j = 0; j + 1 < ys.length; j++) {
      const v00 = values[i][j];
      const v10 = values[i + 1][j];
      const v01 = values[i][j + 1];
      const v11 = values[i + 1][j + 1];
      if ([v00, v10, v01, v11].some((v) => !Number.isFinite(v))) continue;
      let caseId = 0;
      if (v00 > level) caseId |= 1;
      if (v10 > level) caseId |= 2;
      if (v11 > level) caseId |= 4;
      if (v01 > level) caseId |= 8;
      if (caseId === 0 || caseId === 15) continue;
      // crossing points on the four cell edges
      const bottom: [number, number] = [interp(xs[i], xs[i + 1], v00, v10, level), ys[j]];
      const top: [number, number] = [interp(xs[i], xs[i + 1], v01, v11, level), ys[j + 1]];
      const left: [number, number] = [xs[i], interp(ys[j], ys[j + 1], v00, v01, level)];
      const right: [number, number] = [xs[i + 1], interp(ys[j], ys[j + 1], v10, v11, level)];
      switch (caseId) {
        case 1: case 14: segments.push([left, bottom]); break;
        case 2: case 13: segments.push([bottom, right]); break;
        case 3: case 12: segments.push([left, right]); break;
        case 4: case 11: segments.push([top, right]); break;
        case 6: case 9: segments.push([bottom, top]); break;
        case 7: case 8: segments.push([left, top]); break;
        case 5:
          segments.push([left, bottom]);
          segments.push([top, right]);
          break;
        case 10:
          segments.push([bottom, right]);
          segments.push([left, top]);
          break;
      }
    }
  }
  return segments;
}

/** Shared-edge segments between adjacent cells with different labels.
 *
 * Labels sit at grid nodes; an edge is drawn at the midline between two
 * neighbouring nodes whose labels differ (cell-edge tracing: the plotting
 * layer never re-derives the physics behind the labels).
 */
export function labelBoundarySegments(
  xs: number[],
  ys: number[],
  labels: string[][],
): Segment[] {
  const segments: Segment[] = [];
  const stepX = (k: number) => (xs[k + 1] - xs[k]) / 2;
  const stepY = (k: number) => (ys[k + 1] - ys[k]) / 2;
  for (let i = 0; i < xs.length; i++) {
    for (let j = 0; j < ys.length; j++) {
      if (!labels[i][j]) continue;
      if (i + 1 < xs.length && labels[i + 1][j] && labels[i][j] !== labels[i + 1][j]) {
        const xm = xs[i] + stepX(i);
        const y0 = j > 0 ? ys[j] - stepY(j - 1) : ys[j] - stepY(j);
        const y1 = j + 1 < ys.length ? ys[j] + stepY(j) : ys[j] + stepY(j - 1);
        segments.push([[xm, y0], [xm, y1]]);
      }
      if (j + 1 < ys.length && labels[i][j + 1] && labels[i][j] !== labels[i][j + 1]) {
        const ym = ys[j] + stepY(j);
        const x0 = i > 0 ? xs[i] - stepX(i - 1) : xs[i] - stepX(i);
        const x1 = i + 1 < xs.length ? xs[i] + stepX(i) : xs[i] + stepX(i - 1);
        segments.push([[x0, ym], [x1, ym]]);
      }
    }
  }
  return segments;
}
