/** Strict reader for the sweep CSV contract of the simulation package. */

export const CSV_COLUMNS = [
  "axis_name", "axis_value", "success_rate", "ci_low", "ci_high", "trials",
  "theory_achievable_p", "theory_converse_p", "regime", "elapsed_ms", "seed",
] as const;

export interface SweepRow {
  axisName: string;
  axisValue: number;
  successRate: number | null;
  ciLow: number | null;
  ciHigh: number | null;
  trials: number;
  theoryAchievableP: number | null;
  theoryConverseP: number | null;
  regime: string;
  elapsedMs: number | null;
  seed: string;
}

function parseNumber(field: string): number | null {
  if (field === "") return null;
  if (field === "nan") return NaN;
  if (field === "inf") return Infinity;
  if (field === "-inf") return -Infinity;
  const value = Number(field);
  if (Number.isNaN(value)) throw new Error(`not a number: ${JSON.stringify(field)}`);
  return value;
}

/**
 * Parse one sweep CSV. The header must match the contract exactly; a file
 * with no data rows is an error naming the file.
 */
export function parseSweepCsv(text: string, name: string): SweepRow[] {
  const lines = text.split(/\r?\n/).filter((line) => line.length > 0);
  if (lines.length === 0) {
    throw new Error(`empty CSV: ${name}`);
  }
  if (lines[0] !== CSV_COLUMNS.join(",")) {
    throw new Error(`schema mismatch in ${name}: unexpected header ${JSON.stringify(lines[0])}`);
  }
  if (lines.length === 1) {
    throw new Error(`empty CSV (header only): ${name}`);
  }
  return lines.slice(1).map((line, index) => {
    const fields = line.split(",");
    if (fields.length !== CSV_COLUMNS.length) {
      throw new Error(`schema mismatch in ${name}: row ${index + 1} has ${fields.length} fields`);
    }
    const value = parseNumber(fields[1]);
    if (value === null) throw new Error(`schema mismatch in ${name}: missing axis_value`);
    return {
      axisName: fields[0],
      axisValue: value,
      successRate: parseNumber(fields[2]),
      ciLow: parseNumber(fields[3]),
      ciHigh: parseNumber(fields[4]),
      trials: Number(fields[5]),
      theoryAchievableP: parseNumber(fields[6]),
      theoryConverseP: parseNumber(fields[7]),
      regime: fields[8],
      elapsedMs: parseNumber(fields[9]),
      seed: fields[10],
    };
  });
}
