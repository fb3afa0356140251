/**
 * Broadcast-schedule configs, mirroring the simulator's JSON schema:
 *
 *   {"type": "single",  "level": 6}
 *   {"type": "split",   "first": 6, "second": 0, "switch_tick": 50}
 *   {"type": "gradual", "start": 6, "end": 0, "interval": 10}
 *   {"type": "explicit", "levels": {"1": [6], "2": [5], ...}}
 */

export class ScheduleConfigError extends Error {
  constructor(public fields: string[]) {
    super(`invalid schedule config, offending fields: ${fields.join(", ")}`);
    this.name = "ScheduleConfigError";
  }
}

export type ScheduleConfig =
  | { type: "single"; level: number }
  | { type: "split"; first: number; second: number; switch_tick: number }
  | { type: "gradual"; start: number; end: number; interval: number }
  | { type: "explicit"; levels: Map<number, number[]> };

function levelOk(v: unknown): v is number {
  return typeof v === "number" && Number.isInteger(v) && v >= 0 && v <= 6;
}

function posIntOk(v: unknown): v is number {
  return typeof v === "number" && Number.isInteger(v) && v >= 1;
}

export function parseScheduleConfig(doc: unknown): ScheduleConfig {
  if (typeof doc !== "object" || doc === null) {
    throw new ScheduleConfigError(["<document>"]);
  }
  const d = doc as Record<string, unknown>;
  const bad: string[] = [];
  switch (d.type) {
    case "single": {
      const level = d.level ?? 6;
      if (!levelOk(level)) bad.push("level");
      if (bad.length) throw new ScheduleConfigError(bad);
      return { type: "single", level: level as number };
    }
    case "split": {
      if (!levelOk(d.first)) bad.push("first");
      if (!levelOk(d.second)) bad.push("second");
      if (!posIntOk(d.switch_tick)) bad.push("switch_tick");
      if (bad.length) throw new ScheduleConfigError(bad);
      return {
        type: "split",
        first: d.first as number,
        second: d.second as number,
        switch_tick: d.switch_tick as number,
      };
    }
    case "gradual": {
      const start = d.start ?? 6;
      const end = d.end ?? 0;
      const interval = d.interval ?? 10;
      if (!levelOk(start)) bad.push("start");
      if (!levelOk(end)) bad.push("end");
      if (!posIntOk(interval)) bad.push("interval");
      if (levelOk(start) && levelOk(end) && end > start) bad.push("end");
      if (bad.length) throw new ScheduleConfigError(bad);
      return {
        type: "gradual",
        start: start as number,
        end: end as number,
        interval: interval as number,
      };
    }
    case "explicit": {
      if (typeof d.levels !== "object" || d.levels === null) {
        throw new ScheduleConfigError(["levels"]);
      }
      const levels = new Map<number, number[]>();
      for (const [key, value] of Object.entries(d.levels as Record<string, unknown>)) {
        const tick = Number(key);
        if (!posIntOk(tick) || !Array.isArray(value) || !value.every(levelOk)) {
          bad.push(`levels.${key}`);
          continue;
        }
        levels.set(tick, value as number[]);
      }
      if (bad.length) throw new ScheduleConfigError(bad);
      if (levels.size === 0) throw new ScheduleConfigError(["levels"]);
      return { type: "explicit", levels };
    }
    default:
      throw new ScheduleConfigError(["type"]);
  }
}

/** Broadcast level(s) at a 1-based tick. */
export function levelsAt(config: ScheduleConfig, t: number): number[] {
  if (t < 1) throw new RangeError(`tick must be >= 1, got ${t}`);
  switch (config.type) {
    case "single":
      return [config.level];
    case "split":
      return [t <= config.switch_tick ? config.first : config.second];
    case "gradual":
      return [Math.max(config.end, config.start - Math.floor((t - 1) / config.interval))];
    case "explicit": {
      const levels = config.levels.get(t);
      if (levels === undefined) throw new RangeError(`no entry for tick ${t}`);
      return levels;
    }
  }
}

/** A natural plotting horizon: where the schedule stops changing. */
export function defaultHorizon(config: ScheduleConfig): number {
  switch (config.type) {
    case "single":
      return 100;
    case "split":
      return Math.max(100, config.switch_tick * 2);
    case "gradual":
      return Math.max(100, (config.start - config.end + 1) * config.interval);
    case "explicit":
      return Math.max(...config.levels.keys());
  }
}
