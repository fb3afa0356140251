/**
 * File-level entry points: read an input, build the SVG, write SVG or PNG
 * depending on the output extension.  Inputs are never modified; nothing
 * is written when parsing fails.
 */

import { readFileSync, writeFileSync } from "node:fs";
import { basename, extname } from "node:path";
import { Resvg } from "@resvg/resvg-js";

import { parseTraceCsv } from "./trace.js";
import { defaultHorizon, parseScheduleConfig } from "./schedule.js";
import { scheduleChartSvg, traceChartSvg } from "./svg.js";

function writeImage(svg: string, outPath: string): void {
  if (extname(outPath).toLowerCase() === ".svg") {
    writeFileSync(outPath, svg);
    return;
  }
  const png = new Resvg(svg, { fitTo: { mode: "original" } }).render().asPng();
  writeFileSync(outPath, png);
}

export function plotTrace(csvPath: string, title: string | undefined, outPath: string): void {
  const frame = parseTraceCsv(readFileSync(csvPath, "utf-8"));
  const svg = traceChartSvg(frame, title ?? basename(csvPath, ".csv"));
  writeImage(svg, outPath);
}

export function plotSchedule(
  configPath: string,
  title: string | undefined,
  outPath: string,
  ticks?: number,
): void {
  const doc: unknown = JSON.parse(readFileSync(configPath, "utf-8"));
  // accept either a bare schedule object or a full run config
  const scheduleDoc =
    typeof doc === "object" && doc !== null && "schedule" in (doc as object)
      ? (doc as { schedule: unknown }).schedule
      : doc;
  const config = parseScheduleConfig(scheduleDoc);
  const horizon = ticks ?? defaultHorizon(config);
  const svg = scheduleChartSvg(config, title ?? basename(configPath, ".json"), horizon);
  writeImage(svg, outPath);
}
