#!/usr/bin/env node
/** qtm-figs <recipe.json> <data.csv> -o <out.png|svg>
 *
 * Renders one qtm-sim sweep CSV according to a figure recipe. The output
 * format follows the -o extension (falling back to the recipe's output
 * block). Nothing is written when rendering fails.
 */

import { readFileSync, writeFileSync } from "node:fs";

import { parseRecipe } from "./recipe";
import { ImageFormat, formatFromPath, renderToBytes } from "./render";

const USAGE = "usage: qtm-figs <recipe.json> <data.csv> -o <out.png|svg>";

export function main(argv: string[]): number {
  const positional: string[] = [];
  let out: string | undefined;
  for (let i = 0; i < argv.length; i++) {
    const arg = argv[i];
    if (arg === "-o" || arg === "--out") {
      out = argv[++i];
    } else if (arg === "-h" || arg === "--help") {
      console.log(USAGE);
      return 0;
    } else {
      positional.push(arg);
    }
  }
  if (positional.length !== 2) {
    console.error(USAGE);
    return 1;
  }
  const [recipePath, csvPath] = positional;
  try {
    const recipe = parseRecipe(readFileSync(recipePath, "utf-8"));
    const target = out ?? recipe.output?.path;
    if (!target) {
      throw new Error("no output path: pass -o or set output.path in the recipe");
    }
    const format: ImageFormat =
      formatFromPath(target) ?? recipe.output?.format ?? "svg";
    const bytes = renderToBytes(recipe, readFileSync(csvPath, "utf-8"), format);
    writeFileSync(target, bytes);
    console.log(target);
    return 0;
  } catch (err) {
    console.error(`qtm-figs: ${(err as Error).message}`);
    return 1;
  }
}

if (require.main === module) {
  process.exit(main(process.argv.slice(2)));
}
