import { describe, expect, it } from "vitest";

import { decodePng, encodePng } from "../src/png";
import { Raster } from "../src/raster";

describe("png codec", () => {
  it("round-trips pixel data", () => {
    const width = 13;
    const height = 7;
    const rgba = new Uint8Array(width * height * 4);
    for (let i = 0; i < rgba.length; i++) rgba[i] = (i * 37) % 256;
    const decoded = decodePng(encodePng(width, height, rgba));
    expect(decoded.width).toBe(width);
    expect(decoded.height).toBe(height);
    expect(Array.from(decoded.rgba)).toEqual(Array.from(rgba));
  });

  it("writes the PNG signature and 150 dpi density", () => {
    const buf = encodePng(2, 2, new Uint8Array(16));
    expect(Array.from(buf.subarray(0, 4))).toEqual([0x89, 0x50, 0x4e, 0x47]);
    expect(decodePng(buf).ppm).toBe(5906); // 150 dpi in pixels per metre
  });

  it("rejects mis-sized buffers", () => {
    expect(() => encodePng(4, 4, new Uint8Array(10))).toThrow(/bytes/);
  });
});

describe("raster", () => {
  it("draws primitives into the buffer", () => {
    const raster = new Raster(40, 30, [255, 255, 255]);
    raster.drawLine(0, 0, 39, 0, [255, 0, 0]);
    raster.fillCircle(20, 15, 3, [0, 0, 255]);
    raster.drawText(2, 10, "p = 0.5", [0, 0, 0]);
    expect(raster.get(5, 0)).toEqual([255, 0, 0, 255]);
    expect(raster.get(20, 15)).toEqual([0, 0, 255, 255]);
    let dark = 0;
    for (let x = 0; x < 40; x++) {
      for (let y = 10; y < 18; y++) {
        if (raster.get(x, y)[0] === 0) dark++;
      }
    }
    expect(dark).toBeGreaterThan(10); // the text left ink behind
  });
});
