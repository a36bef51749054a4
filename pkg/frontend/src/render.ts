/** Recipe + CSV text -> image bytes. Pure: identical inputs, identical bytes. */

import { parseCsv } from "./csv";
import { buildScene, checkColumns } from "./figures";
import { FigureRecipe } from "./recipe";
import { sceneToPng } from "./png";
import { sceneToSvg } from "./svg";

export type ImageFormat = "svg" | "png";

export function formatFromPath(path: string): ImageFormat | null {
  if (path.endsWith(".svg")) return "svg";
  if (path.endsWith(".png")) return "png";
  return null;
}

export function renderToBytes(
  recipe: FigureRecipe,
  csvText: string,
  format: ImageFormat,
): Buffer {
  const table = parseCsv(csvText);
  if (table.rows.length === 0) {
    throw new Error("CSV has a header but no data rows; nothing to render");
  }
  checkColumns(recipe, table);
  const scene = buildScene(recipe, table);
  if (format === "svg") {
    return Buffer.from(sceneToSvg(scene), "utf-8");
  }
  return sceneToPng(scene);
}
