/** RGBA framebuffer with the drawing primitives the figures need. */

import { GLYPH_HEIGHT, GLYPH_WIDTH, glyphFor } from "./font";
import { encodePng } from "./png";

export type Color = readonly [number, number, number, number?];

export class Raster {
  readonly width: number;
  readonly height: number;
  readonly data: Uint8Array;

  constructor(width: number, height: number, background: Color = [255, 255, 255]) {
    this.width = width;
    this.height = height;
    this.data = new Uint8Array(width * height * 4);
    this.fillRect(0, 0, width, height, background);
  }

  set(x: number, y: number, color: Color): void {
    x = Math.round(x);
    y = Math.round(y);
    if (x < 0 || y < 0 || x >= this.width || y >= this.height) return;
    const i = (y * this.width + x) * 4;
    this.data[i] = color[0];
    this.data[i + 1] = color[1];
    this.data[i + 2] = color[2];
    this.data[i + 3] = color[3] ?? 255;
  }

  get(x: number, y: number): [number, number, number, number] {
    const i = (y * this.width + x) * 4;
    return [this.data[i], this.data[i + 1], this.data[i + 2], this.data[i + 3]];
  }

  fillRect(x: number, y: number, w: number, h: number, color: Color): void {
    const x0 = Math.max(0, Math.round(x));
    const y0 = Math.max(0, Math.round(y));
    const x1 = Math.min(this.width, Math.round(x + w));
    const y1 = Math.min(this.height, Math.round(y + h));
    for (let yy = y0; yy < y1; yy++) {
      for (let xx = x0; xx < x1; xx++) {
        this.set(xx, yy, color);
      }
    }
  }

  drawLine(x0: number, y0: number, x1: number, y1: number, color: Color,
           thickness = 1): void {
    let ax = Math.round(x0);
    let ay = Math.round(y0);
    const bx = Math.round(x1);
    const by = Math.round(y1);
    const dx = Math.abs(bx - ax);
    const dy = -Math.abs(by - ay);
    const sx = ax < bx ? 1 : -1;
    const sy = ay < by ? 1 : -1;
    let err = dx + dy;
    for (;;) {
      if (thickness <= 1) {
        this.set(ax, ay, color);
      } else {
        const r = Math.floor(thickness / 2);
        this.fillRect(ax - r, ay - r, thickness, thickness, color);
      }
      if (ax === bx && ay === by) break;
      const e2 = 2 * err;
      if (e2 >= dy) {
        err += dy;
        ax += sx;
      }
      if (e2 <= dx) {
        err += dx;
        ay += sy;
      }
    }
  }

  fillCircle(cx: number, cy: number, radius: number, color: Color): void {
    for (let y = -radius; y <= radius; y++) {
      for (let x = -radius; x <= radius; x++) {
        if (x * x + y * y <= radius * radius) this.set(cx + x, cy + y, color);
      }
    }
  }

  strokeCircle(cx: number, cy: number, radius: number, color: Color): void {
    const steps = Math.max(16, Math.ceil(radius * 8));
    for (let k = 0; k < steps; k++) {
      const angle = (2 * Math.PI * k) / steps;
      this.set(cx + radius * Math.cos(angle), cy + radius * Math.sin(angle), color);
    }
  }

  drawText(x: number, y: number, text: string, color: Color, scale = 1): void {
    let cursor = Math.round(x);
    for (const ch of text) {
      const rows = glyphFor(ch);
      for (let row = 0; row < GLYPH_HEIGHT; row++) {
        for (let col = 0; col < GLYPH_WIDTH; col++) {
          if (rows[row] & (1 << (GLYPH_WIDTH - 1 - col))) {
            this.fillRect(cursor + col * scale, y + row * scale, scale, scale, color);
          }
        }
      }
      cursor += (GLYPH_WIDTH + 1) * scale;
    }
  }

  textWidth(text: string, scale = 1): number {
    return text.length * (GLYPH_WIDTH + 1) * scale;
  }

  toPng(): Buffer {
    return encodePng(this.width, this.height, this.data);
  }
}

export function formatTick(value: number): string {
  if (value === 0) return "0";
  const magnitude = Math.abs(value);
  if (magnitude >= 0.01 && magnitude < 10_000) {
    return String(Number(value.toPrecision(3)));
  }
  return value.toExponential(1).replace("e", "e");
}
