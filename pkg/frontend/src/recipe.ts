/** Figure recipes: JSON documents selecting a plot kind and CSV columns. */

export type FigureKind = "line1d" | "scatter_n" | "heatmap2d";

export interface ContourSpec {
  /** CSV column providing the field; defaults to the recipe's z column. */
  column?: string;
  level: number;
}

export interface FigureRecipe {
  kind: FigureKind;
  title?: string;
  x: string;
  /** line1d: one or more series columns; scatter_n: the reduced column;
   * heatmap2d: the second axis column. */
  y: string | string[];
  /** heatmap2d only: the cell value column. */
  z?: string;
  /** scatter_n: optional series column (one marker set per distinct value). */
  group_by?: string;
  /** scatter_n reduction over rows sharing an x (and group) value. */
  aggregate?: "max" | "min";
  /** heatmap2d: iso-level curves, e.g. the Delta = 0 boundary. */
  contours?: ContourSpec[];
  /** heatmap2d: dashed boundaries of the categorical regime column. */
  regime_boundaries?: boolean;
  regime_column?: string;
  width?: number;
  height?: number;
  output?: { path?: string; format?: "svg" | "png" };
}

const KINDS: FigureKind[] = ["line1d", "scatter_n", "heatmap2d"];

export function validateRecipe(doc: unknown): FigureRecipe {
  if (typeof doc !== "object" || doc === null || Array.isArray(doc)) {
    throw new Error("recipe must be a JSON object");
  }
  const r = doc as Record<string, unknown>;
  if (!KINDS.includes(r.kind as FigureKind)) {
    throw new Error(`recipe kind must be one of ${KINDS.join(", ")}, got ${String(r.kind)}`);
  }
  if (typeof r.x !== "string") {
    throw new Error("recipe needs a string x column");
  }
  const yOk =
    typeof r.y === "string" ||
    (Array.isArray(r.y) && r.y.length > 0 && r.y.every((s) => typeof s === "string"));
  if (!yOk) {
    throw new Error("recipe needs y as a column name or non-empty list of column names");
  }
  if (r.kind === "heatmap2d") {
    if (typeof r.z !== "string") {
      throw new Error("heatmap2d recipes need a z value column");
    }
    if (Array.isArray(r.y)) {
      throw new Error("heatmap2d recipes take a single y axis column");
    }
  }
  if (r.aggregate !== undefined && r.aggregate !== "max" && r.aggregate !== "min") {
    throw new Error('aggregate must be "max" or "min"');
  }
  if (r.contours !== undefined) {
    if (!Array.isArray(r.contours)) {
      throw new Error("contours must be a list");
    }
    for (const c of r.contours as unknown[]) {
      const spec = c as Record<string, unknown>;
      if (typeof spec.level !== "number") {
        throw new Error("each contour needs a numeric level");
      }
    }
  }
  return r as unknown as FigureRecipe;
}

export function parseRecipe(json: string): FigureRecipe {
  let doc: unknown;
  try {
    doc = JSON.parse(json);
  } catch (err) {
    throw new Error(`recipe is not valid JSON: ${(err as Error).message}`);
  }
  return validateRecipe(doc);
}

export function seriesColumns(recipe: FigureRecipe): string[] {
  return Array.isArray(recipe.y) ? recipe.y : [recipe.y];
}
