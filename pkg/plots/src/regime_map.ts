/**
 * Regime-map figure over the (theta_a, theta_r) square.
 *
 * Cell labels come from the simulation package's CLI (one batch invocation
 * of `threshold --grid-res`), never from formulas reimplemented here; the
 * three labelled example points are marked on top.
 */

import { spawnSync } from "node:child_process";
import { writeFileSync } from "node:fs";

import { Color, formatTick, Raster } from "./raster";

export const REGIME_COLORS: Record<string, Color> = {
  social_sensitive: [240, 205, 85],
  movie_sensitive: [120, 190, 120],
  atypicality_sensitive: [95, 125, 220],
  boundary: [60, 60, 60],
};

export const LABELED_POINTS: Array<[number, number]> = [
  [0.3, 0.03],
  [0.3, 0.15],
  [0.35, 0.1156],
];

const DEFAULT_CMD = "python3 -m graphmc";

export interface RegimeGrid {
  res: number;
  /** cells[i][j] = regime at theta_a = 0.5 (i + 0.5)/res, theta_r likewise. */
  cells: string[][];
}

export function fetchRegimeGrid(n: number, m: number, res: number,
                                command?: string): RegimeGrid {
  const cmd = (command ?? process.env.GRAPHMC_CMD ?? DEFAULT_CMD).split(/\s+/);
  const args = [...cmd.slice(1), "threshold", "--model", "atypical",
                "--n", String(n), "--m", String(m), "--grid-res", String(res)];
  const proc = spawnSync(cmd[0], args, { encoding: "utf8", maxBuffer: 1 << 28 });
  if (proc.status !== 0) {
    throw new Error(`threshold grid invocation failed (${proc.status}): ${proc.stderr}`);
  }
  const lines = proc.stdout.trim().split("\n");
  if (lines[0] !== "theta_a,theta_r,regime" || lines.length !== 1 + res * res) {
    throw new Error(`unexpected grid output: ${lines.length - 1} rows for res ${res}`);
  }
  const cells: string[][] = Array.from({ length: res }, () => new Array(res).fill(""));
  lines.slice(1).forEach((line, index) => {
    const regime = line.split(",")[2];
    cells[Math.floor(index / res)][index % res] = regime;
  });
  return { res, cells };
}

export function cellIndex(theta: number, res: number): number {
  return Math.min(res - 1, Math.max(0, Math.floor((theta / 0.5) * res)));
}

const MARGIN = { left: 56, right: 14, top: 14, bottom: 44 };

export function renderRegimeMap(grid: RegimeGrid, width = 600, height = 600): Raster {
  const raster = new Raster(width, height);
  const plotW = width - MARGIN.left - MARGIN.right;
  const plotH = height - MARGIN.top - MARGIN.bottom;
  const { res, cells } = grid;
  for (let i = 0; i < res; i++) {
    for (let j = 0; j < res; j++) {
      const color = REGIME_COLORS[cells[i][j]] ?? [200, 200, 200] as Color;
      const x0 = MARGIN.left + (i / res) * plotW;
      const y0 = MARGIN.top + (1 - (j + 1) / res) * plotH;
      raster.fillRect(x0, y0, plotW / res + 1, plotH / res + 1, color);
    }
  }
  const axisColor: Color = [30, 30, 30];
  raster.drawLine(MARGIN.left, MARGIN.top, MARGIN.left, height - MARGIN.bottom, axisColor);
  raster.drawLine(MARGIN.left, height - MARGIN.bottom, width - MARGIN.right,
                  height - MARGIN.bottom, axisColor);
  for (let k = 0; k <= 5; k++) {
    const theta = 0.1 * k;
    const px = MARGIN.left + (theta / 0.5) * plotW;
    const py = MARGIN.top + (1 - theta / 0.5) * plotH;
    raster.drawLine(px, height - MARGIN.bottom, px, height - MARGIN.bottom + 4, axisColor);
    raster.drawText(px - 8, height - MARGIN.bottom + 8, formatTick(theta), axisColor);
    raster.drawLine(MARGIN.left - 4, py, MARGIN.left, py, axisColor);
    raster.drawText(MARGIN.left - 28, py - 3, formatTick(theta), axisColor);
  }
  raster.drawText(MARGIN.left + plotW / 2 - 20, height - MARGIN.bottom + 24,
                  "theta_a", axisColor);
  raster.drawText(4, 4, "theta_r", axisColor);

  for (const [ta, tr] of LABELED_POINTS) {
    const px = MARGIN.left + (ta / 0.5) * plotW;
    const py = MARGIN.top + (1 - tr / 0.5) * plotH;
    raster.fillCircle(px, py, 4, [255, 255, 255]);
    raster.strokeCircle(px, py, 4, [0, 0, 0]);
    raster.strokeCircle(px, py, 5, [0, 0, 0]);
  }
  return raster;
}

export interface RegimeMapOptions {
  n: number;
  m: number;
  res: number;
  command?: string;
}

export function regimeMap(options: RegimeMapOptions, outPath: string): RegimeGrid {
  if (options.res < 16) throw new Error("resolution must be at least 16");
  const grid = fetchRegimeGrid(options.n, options.m, options.res, options.command);
  writeFileSync(outPath, renderRegimeMap(grid).toPng());
  return grid;
}
