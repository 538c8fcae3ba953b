import { parseArgs, requireFlag } from "./args";
import { thresholdCurves } from "./threshold_curves";

const USAGE = "usage: threshold_curves <csv...> -o out.png";

try {
  const args = parseArgs(process.argv.slice(2), { "-o": "out", "--out": "out" });
  if (args.positional.length === 0) throw new Error(`at least one sweep CSV is required\n${USAGE}`);
  const out = requireFlag(args, "out", "-o");
  thresholdCurves(args.positional, out);
  console.log(`wrote ${out}`);
} catch (error) {
  console.error(String(error instanceof Error ? error.message : error));
  process.exit(1);
}
