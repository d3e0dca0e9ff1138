// Typed accessors over the raw-parsed response tree.
//
// The checks are deliberately strict: a missing or mistyped field is a
// contract violation and should surface as an error, not as NaN in a
// chart three screens later.

import { isNum, type RawValue } from "./rawjson.js";
import type {
  HitView,
  Num,
  RunView,
  SeriesPageView,
  SpectrumView,
  StatsView,
  StepView,
} from "./types.js";

type RawObject = { [key: string]: RawValue };

function asObject(value: RawValue, where: string): RawObject {
  if (typeof value !== "object" || value === null || Array.isArray(value) || isNum(value)) {
    throw new TypeError(`${where}: expected object`);
  }
  return value;
}

function field(obj: RawObject, key: string): RawValue {
  if (!(key in obj)) throw new TypeError(`missing field '${key}'`);
  return obj[key] as RawValue;
}

function num(obj: RawObject, key: string): Num {
  const value = field(obj, key);
  if (!isNum(value)) throw new TypeError(`field '${key}': expected number`);
  return value;
}

function numOrNull(obj: RawObject, key: string): Num | null {
  const value = field(obj, key);
  if (value === null) return null;
  if (!isNum(value)) throw new TypeError(`field '${key}': expected number or null`);
  return value;
}

function str(obj: RawObject, key: string): string {
  const value = field(obj, key);
  if (typeof value !== "string") throw new TypeError(`field '${key}': expected string`);
  return value;
}

function strOrNull(obj: RawObject, key: string): string | null {
  const value = obj[key];
  if (value === undefined || value === null) return null;
  if (typeof value !== "string") throw new TypeError(`field '${key}': expected string`);
  return value;
}

function bool(obj: RawObject, key: string): boolean {
  const value = field(obj, key);
  if (typeof value !== "boolean") throw new TypeError(`field '${key}': expected boolean`);
  return value;
}

function numArray(value: RawValue, where: string): Num[] {
  if (!Array.isArray(value)) throw new TypeError(`${where}: expected array`);
  return value.map((item, i) => {
    if (!isNum(item)) throw new TypeError(`${where}[${i}]: expected number`);
    return item;
  });
}

function numArrayOrNull(obj: RawObject, key: string): Num[] | null {
  const value = obj[key];
  if (value === undefined || value === null) return null;
  return numArray(value, key);
}

function spectrumView(value: RawValue): SpectrumView | null {
  if (value === null) return null;
  const obj = asObject(value, "spectrum");
  return {
    eigenvalues: numArray(field(obj, "eigenvalues"), "eigenvalues"),
    kind: str(obj, "kind") as SpectrumView["kind"],
    seed: numOrNull(obj, "seed"),
  };
}

function statsView(value: RawValue): StatsView | null {
  if (value === null) return null;
  const obj = asObject(value, "stats");
  return {
    steps: num(obj, "steps"),
    non_narrow_count: num(obj, "non_narrow_count"),
    non_narrow_fraction: num(obj, "non_narrow_fraction"),
    degenerate_count: num(obj, "degenerate_count"),
    degenerate_fraction: num(obj, "degenerate_fraction"),
    singular_count: num(obj, "singular_count"),
    singular_fraction: num(obj, "singular_fraction"),
    positive_count: num(obj, "positive_count"),
    positive_fraction: num(obj, "positive_fraction"),
    zero_count: num(obj, "zero_count"),
    zero_fraction: num(obj, "zero_fraction"),
    avg_nonzero_dimension: num(obj, "avg_nonzero_dimension"),
    max_measure: num(obj, "max_measure"),
    avg_variance: num(obj, "avg_variance"),
    avg_probability: num(obj, "avg_probability"),
    max_probability: num(obj, "max_probability"),
    avg_anticipation: num(obj, "avg_anticipation"),
    max_anticipation: num(obj, "max_anticipation"),
    time_of_maximum: numOrNull(obj, "time_of_maximum"),
  };
}

function stepView(value: RawValue, where: string): StepView {
  const obj = asObject(value, where);
  return {
    index: num(obj, "index"),
    T: num(obj, "T"),
    non_narrow: bool(obj, "non_narrow"),
    degenerate: bool(obj, "degenerate"),
    singular: bool(obj, "singular"),
    positive: bool(obj, "positive"),
    zero_dim: bool(obj, "zero_dim"),
    anticipation: num(obj, "anticipation"),
    probability: num(obj, "probability"),
    variance: num(obj, "variance"),
    nonzero_dimension: num(obj, "nonzero_dimension"),
    max_weight: num(obj, "max_weight"),
    measure: numArrayOrNull(obj, "measure"),
    positions: numArrayOrNull(obj, "positions"),
    original_indices: numArrayOrNull(obj, "original_indices"),
  };
}

function seriesView(value: RawValue): SeriesPageView | null {
  if (value === null) return null;
  const obj = asObject(value, "series");
  const items = field(obj, "items");
  if (!Array.isArray(items)) throw new TypeError("series.items: expected array");
  return {
    total: num(obj, "total"),
    offset: num(obj, "offset"),
    count: num(obj, "count"),
    items: items.map((item, i) => stepView(item, `series.items[${i}]`)),
  };
}

function hitViews(value: RawValue): HitView[] | null {
  if (value === null) return null;
  if (!Array.isArray(value)) throw new TypeError("hits: expected array");
  return value.map((item, i) => {
    const obj = asObject(item, `hits[${i}]`);
    return {
      T: num(obj, "T"),
      steps_taken: num(obj, "steps_taken"),
      record: stepView(field(obj, "record"), `hits[${i}].record`),
    };
  });
}

/** Interpret a raw-parsed POST/GET /runs response body. */
export function runView(value: RawValue): RunView {
  const obj = asObject(value, "response");
  return {
    id: str(obj, "id"),
    status: str(obj, "status"),
    mode: str(obj, "mode") as RunView["mode"],
    seed: numOrNull(obj, "seed"),
    spectrum: spectrumView(field(obj, "spectrum")),
    planned_steps: numOrNull(obj, "planned_steps"),
    cancelled: bool(obj, "cancelled"),
    stats: statsView(field(obj, "stats")),
    series: seriesView(field(obj, "series")),
    hits: hitViews(field(obj, "hits")),
    error: strOrNull(obj, "error"),
  };
}
