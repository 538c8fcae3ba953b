/** Tiny flag parser for the two figure CLIs (no runtime dependencies). */

export interface ParsedArgs {
  positional: string[];
  flags: Map<string, string>;
}

export function parseArgs(argv: string[], flagNames: Record<string, string>): ParsedArgs {
  const positional: string[] = [];
  const flags = new Map<string, string>();
  for (let i = 0; i < argv.length; i++) {
    const token = argv[i];
    if (!token.startsWith("-")) {
      positional.push(token);
      continue;
    }
    const name = flagNames[token];
    if (name === undefined) throw new Error(`unknown flag ${token}`);
    const value = argv[++i];
    if (value === undefined) throw new Error(`flag ${token} needs a value`);
    flags.set(name, value);
  }
  return { positional, flags };
}

export function requireFlag(args: ParsedArgs, name: string, flag: string): string {
  const value = args.flags.get(name);
  if (value === undefined) throw new Error(`missing required flag ${flag}`);
  return value;
}

export function numberFlag(args: ParsedArgs, name: string, flag: string,
                           fallback?: number): number {
  const raw = args.flags.get(name);
  if (raw === undefined) {
    if (fallback === undefined) throw new Error(`missing required flag ${flag}`);
    return fallback;
  }
  const value = Number(raw);
  if (!Number.isFinite(value)) throw new Error(`flag ${flag} expects a number, got ${raw}`);
  return value;
}
