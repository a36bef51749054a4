/** Deterministic SVG writer: fixed two-decimal coordinates, stable
 * attribute order, no timestamps. Identical scenes yield identical bytes. */

import { Primitive, Scene } from "./scene";

function fmt(value: number): string {
  const s = value.toFixed(2);
  return s === "-0.00" ? "0.00" : s;
}

function escapeText(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;");
}

function dashAttr(dash?: number[]): string {
  if (!dash || dash.length === 0) return "";
  return ` stroke-dasharray="${dash.map(fmt).join(",")}"`;
}

function item(p: Primitive): string {
  switch (p.kind) {
    case "rect":
      return `<rect x="${fmt(p.x)}" y="${fmt(p.y)}" width="${fmt(p.w)}" height="${fmt(p.h)}" fill="${p.fill}"/>`;
    case "line":
      return (
        `<line x1="${fmt(p.x1)}" y1="${fmt(p.y1)}" x2="${fmt(p.x2)}" y2="${fmt(p.y2)}"` +
        ` stroke="${p.stroke}" stroke-width="${fmt(p.width)}"${dashAttr(p.dash)}/>`
      );
    case "polyline": {
      const pts = p.points.map(([x, y]) => `${fmt(x)},${fmt(y)}`).join(" ");
      return (
        `<polyline points="${pts}" fill="none" stroke="${p.stroke}"` +
        ` stroke-width="${fmt(p.width)}"${dashAttr(p.dash)}/>`
      );
    }
    case "circle":
      return `<circle cx="${fmt(p.cx)}" cy="${fmt(p.cy)}" r="${fmt(p.r)}" fill="${p.fill}"/>`;
    case "text":
      return (
        `<text x="${fmt(p.x)}" y="${fmt(p.y)}" font-family="Helvetica,Arial,sans-serif"` +
        ` font-size="${fmt(p.size)}" text-anchor="${p.anchor === "start" ? "start" : p.anchor}"` +
        ` fill="${p.fill}">${escapeText(p.text)}</text>`
      );
  }
}

export function sceneToSvg(scene: Scene): string {
  const lines = [
    `<svg xmlns="http://www.w3.org/2000/svg" width="${scene.width}" height="${scene.height}" viewBox="0 0 ${scene.width} ${scene.height}">`,
    `<rect x="0" y="0" width="${scene.width}" height="${scene.height}" fill="${scene.background}"/>`,
  ];
  for (const p of scene.items) {
    lines.push(item(p));
  }
  lines.push("</svg>");
  return lines.join("\n") + "\n";
}
