/**
 * Threshold-curve figure: one theory series per sweep CSV, with the
 * empirical 50%-success crossing marked where the data contain one.
 */

import { readFileSync, writeFileSync } from "node:fs";
import { basename } from "node:path";

import { parseSweepCsv, SweepRow } from "./csv";
import { Color, formatTick, Raster } from "./raster";

export const PALETTE: Color[] = [
  [31, 119, 180],
  [214, 94, 39],
  [44, 160, 44],
  [148, 103, 189],
  [140, 86, 75],
  [227, 119, 194],
];

export interface Series {
  name: string;
  axisName: string;
  points: Array<{ x: number; y: number }>;
  crossing: number | null;
}

/** First axis position where the empirical success rate crosses one half. */
export function successCrossing(rows: SweepRow[]): number | null {
  const usable = rows.filter((row) => row.successRate !== null);
  for (let i = 0; i + 1 < usable.length; i++) {
    const a = usable[i].successRate! - 0.5;
    const b = usable[i + 1].successRate! - 0.5;
    if (a === 0) return usable[i].axisValue;
    if (a < 0 !== b < 0 || b === 0) {
      const t = Math.abs(a) / (Math.abs(a) + Math.abs(b));
      return usable[i].axisValue + t * (usable[i + 1].axisValue - usable[i].axisValue);
    }
  }
  return null;
}

export function loadSeries(paths: string[]): Series[] {
  if (paths.length === 0) throw new Error("no CSV files given");
  const series = paths.map((path) => {
    const rows = parseSweepCsv(readFileSync(path, "utf8"), path);
    const points = rows
      .filter((row) => row.theoryAchievableP !== null && Number.isFinite(row.theoryAchievableP))
      .map((row) => ({ x: row.axisValue, y: row.theoryAchievableP as number }));
    if (points.length === 0) {
      throw new Error(`no finite theory values in ${path}`);
    }
    return {
      name: basename(path).replace(/\.csv$/, ""),
      axisName: rows[0].axisName,
      points,
      crossing: successCrossing(rows),
    };
  });
  const axes = new Set(series.map((s) => s.axisName));
  if (axes.size > 1) {
    throw new Error(`schema mismatch: CSVs sweep different axes (${[...axes].join(", ")})`);
  }
  return series;
}

const MARGIN = { left: 64, right: 16, top: 18, bottom: 46 };

export function renderThresholdCurves(series: Series[], width = 640, height = 480): Raster {
  const raster = new Raster(width, height);
  const xs = series.flatMap((s) => s.points.map((p) => p.x));
  const ys = series.flatMap((s) => s.points.map((p) => p.y));
  const xMin = Math.min(...xs);
  const xMax = Math.max(...xs);
  const yMin = 0;
  const yMax = Math.max(...ys, 1e-12) * 1.05;
  const plotW = width - MARGIN.left - MARGIN.right;
  const plotH = height - MARGIN.top - MARGIN.bottom;
  const toX = (x: number) =>
    MARGIN.left + (xMax === xMin ? 0.5 : (x - xMin) / (xMax - xMin)) * plotW;
  const toY = (y: number) => MARGIN.top + (1 - (y - yMin) / (yMax - yMin)) * plotH;

  const axisColor: Color = [40, 40, 40];
  raster.drawLine(MARGIN.left, MARGIN.top, MARGIN.left, height - MARGIN.bottom, axisColor);
  raster.drawLine(MARGIN.left, height - MARGIN.bottom, width - MARGIN.right,
                  height - MARGIN.bottom, axisColor);
  for (let k = 0; k <= 4; k++) {
    const xv = xMin + (k / 4) * (xMax - xMin);
    const px = toX(xv);
    raster.drawLine(px, height - MARGIN.bottom, px, height - MARGIN.bottom + 4, axisColor);
    const label = formatTick(xv);
    raster.drawText(px - raster.textWidth(label) / 2, height - MARGIN.bottom + 8,
                    label, axisColor);
    const yv = yMin + (k / 4) * (yMax - yMin);
    const py = toY(yv);
    raster.drawLine(MARGIN.left - 4, py, MARGIN.left, py, axisColor);
    const ylabel = formatTick(yv);
    raster.drawText(MARGIN.left - 8 - raster.textWidth(ylabel), py - 3, ylabel, axisColor);
  }
  raster.drawText(MARGIN.left + plotW / 2 - raster.textWidth(series[0].axisName) / 2,
                  height - MARGIN.bottom + 24, series[0].axisName, axisColor);
  raster.drawText(4, 4, "theory_achievable_p", axisColor);

  series.forEach((s, index) => {
    const color = PALETTE[index % PALETTE.length];
    const pts = [...s.points].sort((a, b) => a.x - b.x);
    for (let i = 0; i + 1 < pts.length; i++) {
      raster.drawLine(toX(pts[i].x), toY(pts[i].y), toX(pts[i + 1].x), toY(pts[i + 1].y),
                      color, 2);
    }
    if (s.crossing !== null && s.crossing >= xMin && s.crossing <= xMax) {
      const px = toX(s.crossing);
      for (let y = MARGIN.top; y < height - MARGIN.bottom; y += 6) {
        raster.drawLine(px, y, px, Math.min(y + 3, height - MARGIN.bottom), color);
      }
      raster.fillCircle(px, height - MARGIN.bottom - 6, 3, color);
    }
    const legendY = MARGIN.top + 6 + index * 12;
    raster.fillRect(width - MARGIN.right - 150, legendY, 18, 3, color);
    raster.drawText(width - MARGIN.right - 126, legendY - 2, s.name, axisColor);
  });
  return raster;
}

export function thresholdCurves(paths: string[], outPath: string): void {
  const raster = renderThresholdCurves(loadSeries(paths));
  writeFileSync(outPath, raster.toPng());
}
