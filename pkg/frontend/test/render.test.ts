import { strict as assert } from "node:assert";
import { readFileSync, readdirSync } from "node:fs";
import { join } from "node:path";
import test from "node:test";
import { inflateSync } from "node:zlib";

import { parseRecipe, validateRecipe } from "../src/recipe";
import { renderToBytes } from "../src/render";

const ROOT = join(__dirname, "..", "..");
const RECIPES = join(ROOT, "recipes");
const TESTDATA = join(ROOT, "testdata");

function load(name: string) {
  const recipe = parseRecipe(readFileSync(join(RECIPES, `${name}.json`), "utf-8"));
  const csv = readFileSync(join(TESTDATA, `${name}.csv`), "utf-8");
  return { recipe, csv };
}

test("every preset recipe renders its harness CSV to SVG", () => {
  const names = readdirSync(RECIPES)
    .filter((f) => f.endsWith(".json"))
    .map((f) => f.replace(/\.json$/, ""))
    .sort();
  assert.equal(names.length, 11);
  for (const name of names) {
    const { recipe, csv } = load(name);
    const bytes = renderToBytes(recipe, csv, "svg");
    assert.ok(bytes.length > 500, `${name} produced ${bytes.length} bytes`);
    const text = bytes.toString("utf-8");
    assert.ok(text.startsWith("<svg "), name);
    assert.ok(text.trimEnd().endsWith("</svg>"), name);
  }
});

test("rendering is deterministic: fig3a twice is byte-identical", () => {
  const { recipe, csv } = load("fig3a");
  const a = renderToBytes(recipe, csv, "svg");
  const b = renderToBytes(recipe, csv, "svg");
  assert.ok(a.equals(b));
  const pa = renderToBytes(recipe, csv, "png");
  const pb = renderToBytes(recipe, csv, "png");
  assert.ok(pa.equals(pb));
});

test("heatmap recipes draw the zero contour and regime boundaries", () => {
  const { recipe, csv } = load("fig5b");
  const text = renderToBytes(recipe, csv, "svg").toString("utf-8");
  assert.ok(text.includes("stroke-dasharray"), "expected dashed regime boundaries");
  assert.match(text, /stroke="#000000" stroke-width="1.80"/);
});

test("missing columns fail with the available-column list", () => {
  const { recipe, csv } = load("fig3a");
  const broken = { ...recipe, y: ["Delta_c9"] };
  assert.throws(
    () => renderToBytes(validateRecipe(broken), csv, "svg"),
    /column "Delta_c9" not found; available columns: .*Delta_c1/,
  );
});

test("an empty CSV body is an error and nothing is produced", () => {
  const { recipe, csv } = load("fig3a");
  const headerOnly = csv.split("\n")[0] + "\n";
  assert.throws(() => renderToBytes(recipe, headerOnly, "svg"), /no data rows/);
});

test("recipe validation rejects malformed documents", () => {
  assert.throws(() => parseRecipe("not json"), /not valid JSON/);
  assert.throws(() => validateRecipe({ kind: "pie", x: "a", y: "b" }), /kind/);
  assert.throws(() => validateRecipe({ kind: "line1d", x: "a", y: [] }), /y as/);
  assert.throws(() => validateRecipe({ kind: "heatmap2d", x: "a", y: "b" }), /z value/);
});

test("png output is a valid image with the scene dimensions", () => {
  const { recipe, csv } = load("fig8c");
  const png = renderToBytes(recipe, csv, "png");
  assert.deepEqual(
    [...png.subarray(0, 8)],
    [0x89, 0x50, 0x4e, 0x47, 0x0d, 0x0a, 0x1a, 0x0a],
  );
  assert.equal(png.subarray(12, 16).toString("ascii"), "IHDR");
  const width = png.readUInt32BE(16);
  const height = png.readUInt32BE(20);
  assert.equal(width, 560);
  assert.equal(height, 400);
  // locate IDAT, inflate it, and check the raw scanline length
  let offset = 8;
  let idat: Buffer | null = null;
  while (offset < png.length) {
    const size = png.readUInt32BE(offset);
    const type = png.subarray(offset + 4, offset + 8).toString("ascii");
    if (type === "IDAT") {
      idat = png.subarray(offset + 8, offset + 8 + size);
      break;
    }
    offset += 12 + size;
  }
  assert.ok(idat, "IDAT chunk missing");
  const raw = inflateSync(idat as Buffer);
  assert.equal(raw.length, height * (1 + 4 * width));
});
