// Text assembly for display and export.
//
// Everything here works from the raw number tokens of the service
// response, so saved files and on-screen numbers are byte-identical to
// what the service sent.

import type { Num, StatsView, StepView } from "./types.js";

function raw(value: Num | null): string {
  return value === null ? "" : value.raw;
}

/** Ordered (label, value) pairs for the numerical output box. */
export function statsRows(stats: StatsView): Array<[string, string]> {
  return [
    ["steps", stats.steps.raw],
    ["non_narrow_count", stats.non_narrow_count.raw],
    ["non_narrow_fraction", stats.non_narrow_fraction.raw],
    ["degenerate_count", stats.degenerate_count.raw],
    ["degenerate_fraction", stats.degenerate_fraction.raw],
    ["singular_count", stats.singular_count.raw],
    ["singular_fraction", stats.singular_fraction.raw],
    ["positive_count", stats.positive_count.raw],
    ["positive_fraction", stats.positive_fraction.raw],
    ["zero_count", stats.zero_count.raw],
    ["zero_fraction", stats.zero_fraction.raw],
    ["avg_nonzero_dimension", stats.avg_nonzero_dimension.raw],
    ["max_measure", stats.max_measure.raw],
    ["avg_variance", stats.avg_variance.raw],
    ["avg_probability", stats.avg_probability.raw],
    ["max_probability", stats.max_probability.raw],
    ["avg_anticipation", stats.avg_anticipation.raw],
    ["max_anticipation", stats.max_anticipation.raw],
    ["time_of_maximum", raw(stats.time_of_maximum)],
  ];
}

/** CSV of the run statistics: one statistic per row. */
export function statsCsv(stats: StatsView): string {
  const lines = ["statistic,value"];
  for (const [label, value] of statsRows(stats)) {
    lines.push(`${label},${value}`);
  }
  return lines.join("\n") + "\n";
}

const SERIES_COLUMNS = [
  "index",
  "T",
  "non_narrow",
  "degenerate",
  "singular",
  "positive",
  "zero_dim",
  "anticipation",
  "probability",
  "variance",
  "nonzero_dimension",
  "max_weight",
] as const;

/** CSV of the step series, one row per step, raw tokens throughout. */
export function seriesCsv(items: StepView[]): string {
  const lines = [SERIES_COLUMNS.join(",")];
  for (const item of items) {
    lines.push(
      [
        item.index.raw,
        item.T.raw,
        String(item.non_narrow),
        String(item.degenerate),
        String(item.singular),
        String(item.positive),
        String(item.zero_dim),
        item.anticipation.raw,
        item.probability.raw,
        item.variance.raw,
        item.nonzero_dimension.raw,
        item.max_weight.raw,
      ].join(","),
    );
  }
  return lines.join("\n") + "\n";
}

export interface MeasureRow {
  index: string;
  position: string;
  weight: string;
}

/**
 * Index / Spectrum / Measure table of a step record, in display order.
 * Index is the zero-based position in the original spectrum ordering.
 */
export function measureRows(record: StepView): MeasureRow[] {
  if (record.measure === null || record.positions === null) return [];
  return record.measure.map((weight, i) => ({
    index: record.original_indices
      ? (record.original_indices[i]?.raw ?? String(i))
      : String(i),
    position: record.positions?.[i]?.raw ?? "",
    weight: weight.raw,
  }));
}
