#!/usr/bin/env node
/**
 * figviz: chart rendering for simulator outputs.
 *
 *   figviz trace <trace.csv> --out <chart.png|svg> [--title T]
 *   figviz schedule <schedule.json> --out <chart.png|svg> [--title T] [--ticks N]
 *
 * Failures exit nonzero with one JSON error line on stderr.
 */

import { plotSchedule, plotTrace } from "./render.js";
import { ScheduleConfigError } from "./schedule.js";
import { TraceParseError } from "./trace.js";

interface Args {
  input: string;
  out: string;
  title?: string;
  ticks?: number;
}

function fail(code: string, message: string): never {
  process.stderr.write(JSON.stringify({ error: code, message }) + "\n");
  process.exit(1);
}

function parseArgs(argv: string[]): Args {
  let input: string | undefined;
  let out: string | undefined;
  let title: string | undefined;
  let ticks: number | undefined;
  for (let i = 0; i < argv.length; i++) {
    const arg = argv[i];
    if (arg === "--out") out = argv[++i];
    else if (arg === "--title") title = argv[++i];
    else if (arg === "--ticks") {
      ticks = Number(argv[++i]);
      if (!Number.isInteger(ticks) || ticks < 1) fail("usage", "--ticks must be a positive integer");
    } else if (arg.startsWith("--")) fail("usage", `unknown flag ${arg}`);
    else if (input === undefined) input = arg;
    else fail("usage", `unexpected argument ${arg}`);
  }
  if (input === undefined) fail("usage", "missing input file");
  if (out === undefined) fail("usage", "missing --out <image-path>");
  return { input, out, title, ticks };
}

export function main(argv: string[]): void {
  const [command, ...rest] = argv;
  if (command !== "trace" && command !== "schedule") {
    fail("usage", "usage: figviz trace|schedule <input> --out <image>");
  }
  const args = parseArgs(rest);
  try {
    if (command === "trace") {
      plotTrace(args.input, args.title, args.out);
    } else {
      plotSchedule(args.input, args.title, args.out, args.ticks);
    }
  } catch (err) {
    if (err instanceof TraceParseError) fail("parse", err.message);
    if (err instanceof ScheduleConfigError) fail("schema", err.message);
    if (err instanceof SyntaxError) fail("parse", `not valid JSON: ${err.message}`);
    if (err instanceof Error && "code" in err) fail("io", err.message);
    throw err;
  }
  process.stdout.write(args.out + "\n");
}

main(process.argv.slice(2));
