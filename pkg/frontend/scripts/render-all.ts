#!/usr/bin/env node
/**
 * Render every *_trace.csv in a directory to PNG (or SVG with --svg).
 *
 *   node dist/scripts/render-all.js <csv-dir> <out-dir> [--svg]
 *
 * Exits nonzero if any file fails to render; prints a per-file line.
 */

import { mkdirSync, readdirSync } from "node:fs";
import { basename, join } from "node:path";

import { plotTrace } from "../src/render.js";

const [csvDir, outDir, flag] = process.argv.slice(2);
if (!csvDir || !outDir) {
  process.stderr.write("usage: render-all <csv-dir> <out-dir> [--svg]\n");
  process.exit(1);
}
const ext = flag === "--svg" ? ".svg" : ".png";
mkdirSync(outDir, { recursive: true });

const files = readdirSync(csvDir).filter((f) => f.endsWith("_trace.csv")).sort();
if (files.length === 0) {
  process.stderr.write(`no *_trace.csv files in ${csvDir}\n`);
  process.exit(1);
}
let failures = 0;
for (const file of files) {
  const out = join(outDir, basename(file, ".csv") + ext);
  try {
    plotTrace(join(csvDir, file), undefined, out);
    process.stdout.write(`ok   ${file} -> ${out}\n`);
  } catch (err) {
    failures += 1;
    process.stdout.write(`FAIL ${file}: ${err instanceof Error ? err.message : err}\n`);
  }
}
process.stdout.write(`rendered ${files.length - failures}/${files.length}\n`);
process.exit(failures === 0 ? 0 : 1);
