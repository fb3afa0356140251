/**
 * Trace CSV parsing.
 *
 * The simulator writes one row per tick with seven mean fractions and
 * seven cross-run variances:
 *
 *   tick,level_0_mean,...,level_6_mean,level_0_var,...,level_6_var
 *
 * Ticks must increase one by one from 0, fractions must lie in [0, 1],
 * variances must be nonnegative.  Violations raise TraceParseError naming
 * the offending line.
 */

import { NUM_LEVELS } from "./palette.js";

export interface TraceRow {
  tick: number;
  means: number[];
  vars: number[];
}

export interface TraceFrame {
  rows: TraceRow[];
  /** true when any variance cell is nonzero, enabling the shaded band */
  hasVariance: boolean;
}

export class TraceParseError extends Error {
  constructor(public line: number, detail: string) {
    super(`line ${line}: ${detail}`);
    this.name = "TraceParseError";
  }
}

const EXPECTED_HEADER = [
  "tick",
  ...Array.from({ length: NUM_LEVELS }, (_, b) => `level_${b}_mean`),
  ...Array.from({ length: NUM_LEVELS }, (_, b) => `level_${b}_var`),
].join(",");

export function parseTraceCsv(text: string): TraceFrame {
  const lines = text.split(/\r?\n/).filter((ln, i, arr) => !(ln === "" && i === arr.length - 1));
  if (lines.length === 0 || lines[0].trim() === "") {
    throw new TraceParseError(1, "empty file, expected a trace header");
  }
  if (lines[0] !== EXPECTED_HEADER) {
    throw new TraceParseError(1, `header must be "${EXPECTED_HEADER}"`);
  }
  if (lines.length === 1) {
    throw new TraceParseError(2, "no data rows after the header");
  }
  const rows: TraceRow[] = [];
  let hasVariance = false;
  for (let i = 1; i < lines.length; i++) {
    const lineNo = i + 1;
    if (lines[i].trim() === "") {
      throw new TraceParseError(lineNo, "blank row inside the trace body");
    }
    const cells = lines[i].split(",");
    if (cells.length !== 1 + 2 * NUM_LEVELS) {
      throw new TraceParseError(lineNo, `expected ${1 + 2 * NUM_LEVELS} cells, got ${cells.length}`);
    }
    const numbers = cells.map((c) => Number(c));
    const badIdx = numbers.findIndex((x) => !Number.isFinite(x));
    if (badIdx >= 0) {
      throw new TraceParseError(lineNo, `cell ${badIdx + 1} is not a number: "${cells[badIdx]}"`);
    }
    const tick = numbers[0];
    if (!Number.isInteger(tick) || tick !== rows.length) {
      throw new TraceParseError(lineNo, `tick must be ${rows.length}, got ${cells[0]}`);
    }
    const means = numbers.slice(1, 1 + NUM_LEVELS);
    const vars = numbers.slice(1 + NUM_LEVELS);
    for (let b = 0; b < NUM_LEVELS; b++) {
      if (means[b] < 0 || means[b] > 1) {
        throw new TraceParseError(lineNo, `level_${b}_mean out of [0, 1]: ${means[b]}`);
      }
      if (vars[b] < 0) {
        throw new TraceParseError(lineNo, `level_${b}_var negative: ${vars[b]}`);
      }
      if (vars[b] > 0) hasVariance = true;
    }
    rows.push({ tick, means, vars });
  }
  return { rows, hasVariance };
}
