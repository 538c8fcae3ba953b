import { describe, expect, it } from "vitest";

import { CSV_COLUMNS, parseSweepCsv } from "../src/csv";

const HEADER = CSV_COLUMNS.join(",");

describe("sweep csv parsing", () => {
  it("parses a valid file", () => {
    const text = `${HEADER}\n` +
      "p,0.1,0.5,0.3,0.7,50,0.2,0.1,social_sensitive,12.5,42\n" +
      "p,0.2,,,,50,nan,inf,infeasible,0.0,43\n";
    const rows = parseSweepCsv(text, "x.csv");
    expect(rows).toHaveLength(2);
    expect(rows[0].axisName).toBe("p");
    expect(rows[0].theoryAchievableP).toBe(0.2);
    expect(rows[1].successRate).toBeNull();
    expect(Number.isNaN(rows[1].theoryAchievableP)).toBe(true);
    expect(rows[1].theoryConverseP).toBe(Infinity);
  });

  it("rejects a header-only file, naming it", () => {
    expect(() => parseSweepCsv(`${HEADER}\n`, "lonely.csv")).toThrow(/lonely\.csv/);
  });

  it("rejects schema mismatches", () => {
    expect(() => parseSweepCsv("a,b,c\n1,2,3\n", "bad.csv")).toThrow(/schema mismatch/);
    const short = `${HEADER}\np,0.1,0.5\n`;
    expect(() => parseSweepCsv(short, "short.csv")).toThrow(/schema mismatch/);
  });
});
