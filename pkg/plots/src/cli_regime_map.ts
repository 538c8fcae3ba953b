import { numberFlag, parseArgs, requireFlag } from "./args";
import { regimeMap } from "./regime_map";

const USAGE = "usage: regime_map --n <users> --m <movies> --res <cells> -o out.png";

try {
  const args = parseArgs(process.argv.slice(2), {
    "--n": "n", "--m": "m", "--res": "res", "-o": "out", "--out": "out",
    "--cmd": "cmd",
  });
  if (args.positional.length > 0) throw new Error(`unexpected arguments\n${USAGE}`);
  const options = {
    n: numberFlag(args, "n", "--n"),
    m: numberFlag(args, "m", "--m"),
    res: numberFlag(args, "res", "--res", 256),
    command: args.flags.get("cmd"),
  };
  const out = requireFlag(args, "out", "-o");
  regimeMap(options, out);
  console.log(`wrote ${out}`);
} catch (error) {
  console.error(String(error instanceof Error ? error.message : error));
  process.exit(1);
}
