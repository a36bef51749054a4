/** Software rasterizer and PNG encoder (RGBA8, zlib level 9, deterministic). */

import { deflateSync } from "node:zlib";

import { GLYPH_ADVANCE, GLYPH_HEIGHT, GLYPH_WIDTH, glyphRows } from "./font";
import { Primitive, Scene } from "./scene";

type Rgb = [number, number, number];

function parseColor(color: string): Rgb {
  const m = /^#([0-9a-fA-F]{6})$/.exec(color);
  if (!m) {
    throw new Error(`unsupported color ${color}; use #rrggbb`);
  }
  const v = parseInt(m[1], 16);
  return [(v >> 16) & 0xff, (v >> 8) & 0xff, v & 0xff];
}

class Raster {
  readonly data: Uint8Array;

  constructor(readonly width: number, readonly height: number, background: Rgb) {
    this.data = new Uint8Array(width * height * 4);
    for (let i = 0; i < width * height; i++) {
      this.data[4 * i] = background[0];
      this.data[4 * i + 1] = background[1];
      this.data[4 * i + 2] = background[2];
      this.data[4 * i + 3] = 255;
    }
  }

  set(x: number, y: number, rgb: Rgb): void {
    if (x < 0 || y < 0 || x >= this.width || y >= this.height) return;
    const k = 4 * (y * this.width + x);
    this.data[k] = rgb[0];
    this.data[k + 1] = rgb[1];
    this.data[k + 2] = rgb[2];
    this.data[k + 3] = 255;
  }

  fillRect(x: number, y: number, w: number, h: number, rgb: Rgb): void {
    const x0 = Math.round(x);
    const y0 = Math.round(y);
    const x1 = Math.round(x + w);
    const y1 = Math.round(y + h);
    for (let yy = y0; yy < Math.max(y1, y0 + 1); yy++) {
      for (let xx = x0; xx < Math.max(x1, x0 + 1); xx++) {
        this.set(xx, yy, rgb);
      }
    }
  }

  stamp(x: number, y: number, brush: number, rgb: Rgb): void {
    const r = Math.floor(brush / 2);
    for (let dy = -r; dy <= r; dy++) {
      for (let dx = -r; dx <= r; dx++) {
        this.set(x + dx, y + dy, rgb);
      }
    }
  }

  /** Bresenham walk with an optional on/off dash pattern (pixel units). */
  line(
    x1: number, y1: number, x2: number, y2: number,
    width: number, rgb: Rgb, dash?: number[],
  ): void {
    let x = Math.round(x1);
    let y = Math.round(y1);
    const xe = Math.round(x2);
    const ye = Math.round(y2);
    const dx = Math.abs(xe - x);
    const dy = -Math.abs(ye - y);
    const sx = x < xe ? 1 : -1;
    const sy = y < ye ? 1 : -1;
    let err = dx + dy;
    const brush = Math.max(1, Math.round(width));
    const pattern = dash && dash.length ? dash : null;
    let patIdx = 0;
    let patLeft = pattern ? pattern[0] : Infinity;
    let penDown = true;
    for (;;) {
      if (penDown) this.stamp(x, y, brush, rgb);
      if (pattern) {
        patLeft -= 1;
        if (patLeft <= 0) {
          patIdx = (patIdx + 1) % pattern.length;
          patLeft = pattern[patIdx];
          penDown = !penDown;
        }
      }
      if (x === xe && y === ye) break;
      const e2 = 2 * err;
      if (e2 >= dy) {
        err += dy;
        x += sx;
      }
      if (e2 <= dx) {
        err += dx;
        y += sy;
      }
    }
  }

  text(
    x: number, y: number, value: string, size: number,
    anchor: "start" | "middle" | "end", rgb: Rgb,
  ): void {
    const scale = Math.max(1, Math.round(size / 9));
    const textWidth = value.length * GLYPH_ADVANCE * scale - scale;
    let left = Math.round(x);
    if (anchor === "middle") left -= Math.round(textWidth / 2);
    if (anchor === "end") left -= textWidth;
    // the scene y is a text baseline; glyphs hang above it
    const top = Math.round(y) - GLYPH_HEIGHT * scale + scale;
    for (let k = 0; k < value.length; k++) {
      const rows = glyphRows(value[k]);
      const gx = left + k * GLYPH_ADVANCE * scale;
      for (let r = 0; r < GLYPH_HEIGHT; r++) {
        for (let c = 0; c < GLYPH_WIDTH; c++) {
          if (rows[r] & (1 << (GLYPH_WIDTH - 1 - c))) {
            this.fillRect(gx + c * scale, top + r * scale, scale, scale, rgb);
          }
        }
      }
    }
  }
}

function draw(raster: Raster, p: Primitive): void {
  switch (p.kind) {
    case "rect":
      raster.fillRect(p.x, p.y, p.w, p.h, parseColor(p.fill));
      return;
    case "line":
      raster.line(p.x1, p.y1, p.x2, p.y2, p.width, parseColor(p.stroke), p.dash);
      return;
    case "polyline": {
      const rgb = parseColor(p.stroke);
      for (let k = 0; k + 1 < p.points.length; k++) {
        const [ax, ay] = p.points[k];
        const [bx, by] = p.points[k + 1];
        raster.line(ax, ay, bx, by, p.width, rgb, p.dash);
      }
      return;
    }
    case "circle": {
      const rgb = parseColor(p.fill);
      const r = Math.max(1, Math.round(p.r));
      for (let dy = -r; dy <= r; dy++) {
        for (let dx = -r; dx <= r; dx++) {
          if (dx * dx + dy * dy <= r * r) {
            raster.set(Math.round(p.cx) + dx, Math.round(p.cy) + dy, rgb);
          }
        }
      }
      return;
    }
    case "text":
      raster.text(p.x, p.y, p.text, p.size, p.anchor, parseColor(p.fill));
      return;
  }
}

// --- PNG container ----------------------------------------------------------

const CRC_TABLE = (() => {
  const table = new Uint32Array(256);
  for (let n = 0; n < 256; n++) {
    let c = n;
    for (let k = 0; k < 8; k++) {
      c = c & 1 ? 0xedb88320 ^ (c >>> 1) : c >>> 1;
    }
    table[n] = c >>> 0;
  }
  return table;
})();

function crc32(bytes: Uint8Array): number {
  let c = 0xffffffff;
  for (let i = 0; i < bytes.length; i++) {
    c = CRC_TABLE[(c ^ bytes[i]) & 0xff] ^ (c >>> 8);
  }
  return (c ^ 0xffffffff) >>> 0;
}

function chunk(type: string, data: Uint8Array): Buffer {
  const length = Buffer.alloc(4);
  length.writeUInt32BE(data.length, 0);
  const body = Buffer.concat([Buffer.from(type, "ascii"), Buffer.from(data)]);
  const crc = Buffer.alloc(4);
  crc.writeUInt32BE(crc32(body), 0);
  return Buffer.concat([length, body, crc]);
}

function encodePng(raster: Raster): Buffer {
  const { width, height, data } = raster;
  const ihdr = Buffer.alloc(13);
  ihdr.writeUInt32BE(width, 0);
  ihdr.writeUInt32BE(height, 4);
  ihdr[8] = 8;   // bit depth
  ihdr[9] = 6;   // RGBA
  ihdr[10] = 0;  // deflate
  ihdr[11] = 0;  // adaptive filtering (we emit filter 0 rows)
  ihdr[12] = 0;  // no interlace
  const raw = Buffer.alloc(height * (1 + width * 4));
  for (let y = 0; y < height; y++) {
    const rowStart = y * (1 + width * 4);
    raw[rowStart] = 0;
    raw.set(data.subarray(y * width * 4, (y + 1) * width * 4), rowStart + 1);
  }
  const idat = deflateSync(raw, { level: 9 });
  return Buffer.concat([
    Buffer.from([0x89, 0x50, 0x4e, 0x47, 0x0d, 0x0a, 0x1a, 0x0a]),
    chunk("IHDR", ihdr),
    chunk("IDAT", idat),
    chunk("IEND", new Uint8Array(0)),
  ]);
}

export function sceneToPng(scene: Scene): Buffer {
  const raster = new Raster(
    Math.round(scene.width),
    Math.round(scene.height),
    parseColor(scene.background),
  );
  for (const p of scene.items) {
    draw(raster, p);
  }
  return encodePng(raster);
}
